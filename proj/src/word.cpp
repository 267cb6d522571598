#include "wehler/word.hpp"

#include <algorithm>
#include <sstream>

#include "wehler/errors.hpp"

namespace wehler {

namespace {

int last_of(const WordBlock& b) { return (b.length % 2 == 1) ? b.first : b.second; }

// Letter before the last one; only valid for length >= 2.
int before_last_of(const WordBlock& b) { return (b.length % 2 == 1) ? b.second : b.first; }

}  // namespace

Word::Word(std::initializer_list<int> letters) {
  for (int g : letters) push_back(g);
}

Word::Word(const std::vector<int>& letters) {
  for (int g : letters) push_back(g);
}

Word Word::alternating(int a, int b, const Integer& length) {
  Word w;
  w.push_back_run(a, b, length);
  return w;
}

void Word::push_back(int g) { push_back_run(g, -1, Integer(1)); }

void Word::pop_back() {
  auto& b = blocks_.back();
  b.length -= 1;
  if (b.length == 0) {
    blocks_.pop_back();
  } else if (b.length == 1) {
    b.second = -1;
  }
}

void Word::push_back_run(int a, int b, Integer m) {
  if (m < 0) throw InvalidArgument("negative run length");
  if (m == 0) return;
  if (a < 0 || (m > 1 && (b < 0 || b == a))) throw InvalidArgument("malformed alternating run");
  while (m > 0 && !blocks_.empty() && last_letter() == a) {
    auto& t = blocks_.back();
    if (t.length >= 2 && m >= 2 && before_last_of(t) == b) {
      // Both runs alternate over {a, b}: cancel the overlap in one go.
      Integer k = t.length < m ? t.length : m;
      t.length -= k;
      m -= k;
      if (t.length == 0) blocks_.pop_back();
      else if (t.length == 1) t.second = -1;
      if (k % 2 == 1) std::swap(a, b);
      continue;
    }
    pop_back();
    m -= 1;
    std::swap(a, b);
  }
  if (m == 0) return;
  if (m == 1) b = -1;
  if (!blocks_.empty()) {
    auto& t = blocks_.back();
    int e = last_of(t);
    bool joins_tail = t.length == 1 || before_last_of(t) == a;
    bool joins_head = m == 1 || b == e;
    if (joins_tail && joins_head) {
      if (t.length == 1) t.second = a;
      t.length += m;
      return;
    }
  }
  blocks_.push_back({a, b, std::move(m)});
}

Word Word::operator*(const Word& o) const {
  Word r = *this;
  for (const auto& b : o.blocks_) r.push_back_run(b.first, b.second, b.length);
  return r;
}

Word Word::inverse() const {
  Word r;
  for (auto it = blocks_.rbegin(); it != blocks_.rend(); ++it) {
    int e = last_of(*it);
    int f = it->length == 1 ? -1 : before_last_of(*it);
    r.push_back_run(e, f, it->length);
  }
  return r;
}

Integer Word::length() const {
  Integer n(0);
  for (const auto& b : blocks_) n += b.length;
  return n;
}

int Word::first_letter() const {
  if (blocks_.empty()) throw InvalidArgument("empty word has no letters");
  return blocks_.front().first;
}

int Word::last_letter() const {
  if (blocks_.empty()) throw InvalidArgument("empty word has no letters");
  return last_of(blocks_.back());
}

Word Word::without_last() const {
  Word r = *this;
  r.pop_back();
  return r;
}

std::vector<int> Word::letters(std::size_t max_letters) const {
  Integer n = length();
  if (n > Integer(max_letters)) throw InvalidArgument("word too long to expand (" + n.str() + " letters)");
  std::vector<int> out;
  out.reserve(n.convert_to<std::size_t>());
  for (const auto& b : blocks_) {
    auto len = b.length.convert_to<std::size_t>();
    for (std::size_t k = 0; k < len; ++k) out.push_back(k % 2 == 0 ? b.first : b.second);
  }
  return out;
}

void Word::check_letters(int N) const {
  for (const auto& b : blocks_) {
    if (b.first < 0 || b.first > N || (b.length > 1 && (b.second < 0 || b.second > N)))
      throw InvalidArgument("generator index out of range [0, " + std::to_string(N) + "]");
  }
}

std::string Word::str(std::size_t expand_limit) const {
  std::ostringstream os;
  os << '[';
  if (length() <= Integer(expand_limit)) {
    auto ls = letters();
    for (std::size_t i = 0; i < ls.size(); ++i) os << (i ? "," : "") << ls[i];
  } else {
    bool firstb = true;
    for (const auto& b : blocks_) {
      if (!firstb) os << ", ";
      firstb = false;
      if (b.length == 1) {
        os << b.first;
      } else {
        os << "alt(" << b.first << ',' << b.second << ';' << b.length.str() << ')';
      }
    }
  }
  os << ']';
  return os.str();
}

}  // namespace wehler
