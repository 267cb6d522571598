#pragma once

#include <string>
#include <vector>

#include "wehler/scalar.hpp"

namespace wehler {

// Maximal alternating run first, second, first, ... of `length` letters.
// A run of length 1 has second == -1.
struct WordBlock {
  int first;
  int second;
  Integer length;
  bool operator==(const WordBlock&) const = default;
};

// Element of the free product of copies of Z/2, stored reduced and run-length
// encoded. Letters are read left to right; the last letter acts first.
class Word {
 public:
  Word() = default;
  Word(std::initializer_list<int> letters);
  explicit Word(const std::vector<int>& letters);

  // a b a b ... with `length` letters.
  static Word alternating(int a, int b, const Integer& length);

  // Right multiplication by a letter or a run; cancels sigma_i^2 on contact.
  void push_back(int g);
  void push_back_run(int a, int b, Integer length);
  Word operator*(const Word& o) const;

  // Generators are involutions, so the inverse is the reversal.
  Word inverse() const;

  Integer length() const;
  bool empty() const { return blocks_.empty(); }
  int first_letter() const;
  int last_letter() const;
  Word without_last() const;
  const std::vector<WordBlock>& blocks() const { return blocks_; }

  // Expanded letters; throws InvalidArgument beyond max_letters.
  std::vector<int> letters(std::size_t max_letters = 1u << 24) const;

  void check_letters(int N) const;

  bool operator==(const Word& o) const { return blocks_ == o.blocks_; }
  bool operator!=(const Word& o) const { return !(*this == o); }

  // "[0,1,2]" for short words; longer ones print runs as "alt(a,b;length)".
  std::string str(std::size_t expand_limit = 64) const;

 private:
  void pop_back();
  std::vector<WordBlock> blocks_;
};

}  // namespace wehler
