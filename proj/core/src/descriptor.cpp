#include "jordan/descriptor.hpp"

#include <cctype>
#include <charconv>
#include <vector>

namespace jordan {

namespace {

class DescriptorParser {
 public:
  explicit DescriptorParser(std::string_view text) : text_(text) {}

  AlgebraPtr parse() {
    AlgebraPtr result;
    if (consume("sum:")) {
      result = atom();
      int summands = 1;
      while (consume("+")) {
        result = make_direct_sum(result, atom());
        ++summands;
      }
      if (summands < 2) fail("a direct sum needs at least two summands");
    } else {
      result = atom();
    }
    if (pos_ != text_.size()) fail("unexpected trailing input");
    return result;
  }

 private:
  AlgebraPtr atom() {
    if (consume("matrix:")) return make_matrix_jordan(positive("matrix order"));
    if (consume("spin:")) return make_spin_factor(positive("spin factor rank"));
    if (consume("fn:")) return make_function_algebra(positive("function algebra size"));
    fail("expected matrix:, spin: or fn:");
  }

  int positive(const char* what) {
    const std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (start == pos_) fail(std::string("expected a number for ") + what);
    int value = 0;
    const auto [ptr, ec] = std::from_chars(text_.data() + start, text_.data() + pos_, value);
    if (ec != std::errc{}) fail(std::string(what) + " is out of range", start);
    if (value < 1) fail(std::string(what) + " must be at least 1", start);
    // Dense d^3 tensors beyond this are impractical.
    if (value > 64) fail(std::string(what) + " is too large", start);
    return value;
  }

  bool consume(std::string_view token) {
    if (text_.substr(pos_, token.size()) != token) return false;
    pos_ += token.size();
    return true;
  }

  [[noreturn]] void fail(const std::string& what) const { fail(what, pos_); }
  [[noreturn]] void fail(const std::string& what, std::size_t at) const {
    throw ParseError("invalid algebra descriptor '" + std::string(text_) + "': " + what, at);
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

void leaves(const Algebra& a, std::vector<std::string>& out) {
  switch (a.family()) {
    case Family::matrix: out.push_back("matrix:" + std::to_string(a.order())); break;
    case Family::spin: out.push_back("spin:" + std::to_string(a.order())); break;
    case Family::function: out.push_back("fn:" + std::to_string(a.order())); break;
    case Family::direct_sum:
      for (const auto& b : a.blocks()) leaves(*b, out);
      break;
    case Family::custom: throw UnsupportedAlgebra("custom algebra '" + a.label() + "' has no descriptor");
  }
}

}  // namespace

AlgebraPtr parse_algebra(std::string_view descriptor) { return DescriptorParser(descriptor).parse(); }

std::string to_descriptor(const Algebra& algebra) {
  std::vector<std::string> parts;
  leaves(algebra, parts);
  if (parts.size() == 1) return parts.front();
  std::string out = "sum:";
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i > 0) out += '+';
    out += parts[i];
  }
  return out;
}

}  // namespace jordan
