#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace crossmod {

/// One letter of a free-group word: a generator raised to +1 or -1.
struct Letter {
  std::size_t generator = 0;
  int exponent = 1;

  friend bool operator==(const Letter&, const Letter&) = default;
};

/// Word in the free group on a presentation's base generators. The empty word
/// is the identity.
class GroupWord {
 public:
  GroupWord() = default;
  explicit GroupWord(std::vector<Letter> letters) : letters_(std::move(letters)) {}

  static GroupWord generator(std::size_t index, int exponent = 1) {
    return GroupWord({Letter{index, exponent}});
  }

  const std::vector<Letter>& letters() const noexcept { return letters_; }
  bool empty() const noexcept { return letters_.empty(); }
  std::size_t size() const noexcept { return letters_.size(); }

  GroupWord inverse() const {
    std::vector<Letter> out;
    out.reserve(letters_.size());
    for (auto it = letters_.rbegin(); it != letters_.rend(); ++it) out.push_back({it->generator, -it->exponent});
    return GroupWord(std::move(out));
  }

  /// Cancels adjacent x x^-1 pairs until none remain.
  GroupWord reduced() const {
    std::vector<Letter> out;
    out.reserve(letters_.size());
    for (const Letter& l : letters_) {
      if (!out.empty() && out.back().generator == l.generator && out.back().exponent == -l.exponent) {
        out.pop_back();
      } else {
        out.push_back(l);
      }
    }
    return GroupWord(std::move(out));
  }

  /// `word^exponent` for exponent in {+1, -1}.
  GroupWord power(int exponent) const { return exponent < 0 ? inverse() : *this; }

  GroupWord& operator*=(const GroupWord& rhs) {
    letters_.insert(letters_.end(), rhs.letters_.begin(), rhs.letters_.end());
    return *this;
  }
  friend GroupWord operator*(GroupWord lhs, const GroupWord& rhs) { return lhs *= rhs; }

  /// True when every letter's generator index is below `bound`.
  bool references_only_below(std::size_t bound) const {
    for (const Letter& l : letters_)
      if (l.generator >= bound) return false;
    return true;
  }

  void shift_generators(std::size_t offset) {
    for (Letter& l : letters_) l.generator += offset;
  }

  friend bool operator==(const GroupWord&, const GroupWord&) = default;

 private:
  std::vector<Letter> letters_;
};

}  // namespace crossmod
