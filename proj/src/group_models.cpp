#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <deque>

#include "qmedian/error.hpp"
#include "qmedian/group_ends.hpp"

namespace qmedian {

Element GroupModel::multiply(const Element& x, const Element& y) const {
  Element out = x;
  for (int letter : word(y)) out = multiply_letter(out, letter);
  return out;
}

Element GroupModel::evaluate(const Word& w) const {
  Element out = identity();
  for (int letter : w) out = multiply_letter(out, letter);
  return out;
}

Element GroupModel::inverse(const Element& x) const {
  Word w = word(x);
  std::reverse(w.begin(), w.end());
  for (int& letter : w) letter = -letter;
  return evaluate(w);
}

std::string GroupModel::format(const Element& x) const { return format_word(word(x)); }

namespace {

void check_letter(int letter, int k) {
  if (letter == 0 || std::abs(letter) > k) raise(ErrorKind::Validation, "letter " + std::to_string(letter) + " out of range");
}

class FreeAbelian final : public GroupModel {
 public:
  explicit FreeAbelian(int rank) : rank_(rank) {}
  std::string kind() const override { return "free_abelian"; }
  int generator_count() const override { return rank_; }
  Element identity() const override { return Element(rank_, 0); }
  Element multiply_letter(const Element& x, int letter) const override {
    check_letter(letter, rank_);
    Element out = x;
    out[std::abs(letter) - 1] += letter > 0 ? 1 : -1;
    return out;
  }
  int length(const Element& x) const override {
    int n = 0;
    for (int c : x) n += std::abs(c);
    return n;
  }
  Word word(const Element& x) const override {
    Word w;
    for (int i = 0; i < rank_; ++i) {
      for (int k = 0; k < std::abs(x[i]); ++k) w.push_back(x[i] > 0 ? i + 1 : -(i + 1));
    }
    return w;
  }

 private:
  int rank_;
};

class Free final : public GroupModel {
 public:
  explicit Free(int rank) : rank_(rank) {}
  std::string kind() const override { return "free"; }
  int generator_count() const override { return rank_; }
  Element identity() const override { return {}; }
  Element multiply_letter(const Element& x, int letter) const override {
    check_letter(letter, rank_);
    Element out = x;
    if (!out.empty() && out.back() == -letter) {
      out.pop_back();
    } else {
      out.push_back(letter);
    }
    return out;
  }
  int length(const Element& x) const override { return static_cast<int>(x.size()); }
  Word word(const Element& x) const override { return x; }

 private:
  int rank_;
};

// Shared plumbing for products: generator g of the product is generator
// g - offset[f] of factor f.
class ProductBase : public GroupModel {
 public:
  explicit ProductBase(std::vector<std::unique_ptr<GroupModel>> factors) : factors_(std::move(factors)) {
    if (factors_.size() < 2) raise(ErrorKind::Validation, "a product needs at least two factors");
    int total = 0;
    for (const auto& f : factors_) {
      offset_.push_back(total);
      total += f->generator_count();
    }
    total_ = total;
  }
  int generator_count() const override { return total_; }

 protected:
  std::pair<int, int> locate(int letter) const {
    check_letter(letter, total_);
    const int g = std::abs(letter);
    int f = static_cast<int>(factors_.size()) - 1;
    while (offset_[f] >= g) --f;
    const int local = g - offset_[f];
    return {f, letter > 0 ? local : -local};
  }
  int global(int f, int local) const { return local > 0 ? local + offset_[f] : local - offset_[f]; }

  std::vector<std::unique_ptr<GroupModel>> factors_;
  std::vector<int> offset_;
  int total_ = 0;
};

// Encoding: for each factor, its length followed by its normal form.
class DirectProduct final : public ProductBase {
 public:
  using ProductBase::ProductBase;
  std::string kind() const override { return "direct_product"; }
  Element identity() const override {
    Element out;
    for (const auto& f : factors_) append(out, f->identity());
    return out;
  }
  Element multiply_letter(const Element& x, int letter) const override {
    auto parts = split(x);
    auto [f, local] = locate(letter);
    parts[f] = factors_[f]->multiply_letter(parts[f], local);
    Element out;
    for (const auto& p : parts) append(out, p);
    return out;
  }
  int length(const Element& x) const override {
    auto parts = split(x);
    int n = 0;
    for (std::size_t f = 0; f < parts.size(); ++f) n += factors_[f]->length(parts[f]);
    return n;
  }
  Word word(const Element& x) const override {
    auto parts = split(x);
    Word w;
    for (std::size_t f = 0; f < parts.size(); ++f) {
      for (int letter : factors_[f]->word(parts[f])) w.push_back(global(static_cast<int>(f), letter));
    }
    return w;
  }

 private:
  static void append(Element& out, const Element& part) {
    out.push_back(static_cast<int>(part.size()));
    out.insert(out.end(), part.begin(), part.end());
  }
  std::vector<Element> split(const Element& x) const {
    std::vector<Element> parts;
    std::size_t pos = 0;
    for (std::size_t f = 0; f < factors_.size(); ++f) {
      const int len = x[pos++];
      parts.emplace_back(x.begin() + static_cast<long>(pos), x.begin() + static_cast<long>(pos + len));
      pos += static_cast<std::size_t>(len);
    }
    return parts;
  }
};

// Encoding: syllables (factor, length, normal form), adjacent syllables
// from distinct factors, none trivial.
class FreeProduct final : public ProductBase {
 public:
  using ProductBase::ProductBase;
  std::string kind() const override { return "free_product"; }
  Element identity() const override { return {}; }
  Element multiply_letter(const Element& x, int letter) const override {
    auto syl = split(x);
    auto [f, local] = locate(letter);
    if (!syl.empty() && syl.back().first == f) {
      syl.back().second = factors_[f]->multiply_letter(syl.back().second, local);
      if (syl.back().second == factors_[f]->identity()) syl.pop_back();
    } else {
      syl.emplace_back(f, factors_[f]->multiply_letter(factors_[f]->identity(), local));
    }
    Element out;
    for (const auto& [g, part] : syl) {
      out.push_back(g);
      out.push_back(static_cast<int>(part.size()));
      out.insert(out.end(), part.begin(), part.end());
    }
    return out;
  }
  int length(const Element& x) const override {
    int n = 0;
    for (const auto& [f, part] : split(x)) n += factors_[f]->length(part);
    return n;
  }
  Word word(const Element& x) const override {
    Word w;
    for (const auto& [f, part] : split(x)) {
      for (int letter : factors_[f]->word(part)) w.push_back(global(f, letter));
    }
    return w;
  }

 private:
  std::vector<std::pair<int, Element>> split(const Element& x) const {
    std::vector<std::pair<int, Element>> out;
    std::size_t pos = 0;
    while (pos < x.size()) {
      const int f = x[pos];
      const int len = x[pos + 1];
      pos += 2;
      out.emplace_back(f, Element(x.begin() + static_cast<long>(pos), x.begin() + static_cast<long>(pos + len)));
      pos += static_cast<std::size_t>(len);
    }
    return out;
  }
};

class Table final : public GroupModel {
 public:
  Table(std::vector<std::vector<int>> right, int identity, std::vector<std::string> names)
      : right_(std::move(right)), identity_(identity), names_(std::move(names)) {
    const int n = static_cast<int>(right_.size());
    if (n == 0) raise(ErrorKind::Validation, "empty multiplication table");
    if (identity_ < 0 || identity_ >= n) raise(ErrorKind::Validation, "identity out of range");
    k_ = static_cast<int>(right_[0].size());
    if (k_ == 0) raise(ErrorKind::Validation, "table has no generators");
    left_.assign(n, std::vector<int>(k_, -1));
    for (int v = 0; v < n; ++v) {
      if (static_cast<int>(right_[v].size()) != k_) {
        raise(ErrorKind::Validation, "element " + std::to_string(v) + " lacks some generator images");
      }
      for (int g = 0; g < k_; ++g) {
        const int w = right_[v][g];
        if (w < 0 || w >= n) raise(ErrorKind::Validation, "table entry out of range");
        if (left_[w][g] >= 0) raise(ErrorKind::Validation, "generator " + std::to_string(g + 1) + " is not a bijection");
        left_[w][g] = v;
      }
    }
    dist_.assign(n, -1);
    parent_letter_.assign(n, 0);
    parent_.assign(n, -1);
    std::deque<int> queue{identity_};
    dist_[identity_] = 0;
    while (!queue.empty()) {
      const int v = queue.front();
      queue.pop_front();
      for (int letter = -k_; letter <= k_; ++letter) {
        if (letter == 0) continue;
        const int w = step(v, letter);
        if (dist_[w] >= 0) continue;
        dist_[w] = dist_[v] + 1;
        parent_[w] = v;
        parent_letter_[w] = letter;
        queue.push_back(w);
      }
    }
    for (int v = 0; v < n; ++v) {
      if (dist_[v] < 0) raise(ErrorKind::Validation, "generators do not reach element " + std::to_string(v));
    }
  }
  std::string kind() const override { return "table"; }
  int generator_count() const override { return k_; }
  Element identity() const override { return {identity_}; }
  Element multiply_letter(const Element& x, int letter) const override {
    check_letter(letter, k_);
    return {step(x[0], letter)};
  }
  int length(const Element& x) const override { return dist_[x[0]]; }
  Word word(const Element& x) const override {
    Word w;
    for (int v = x[0]; v != identity_; v = parent_[v]) w.push_back(parent_letter_[v]);
    std::reverse(w.begin(), w.end());
    return w;
  }

 private:
  int step(int v, int letter) const { return letter > 0 ? right_[v][letter - 1] : left_[v][-letter - 1]; }

  std::vector<std::vector<int>> right_;
  std::vector<std::vector<int>> left_;
  int identity_;
  int k_ = 0;
  std::vector<std::string> names_;
  std::vector<int> dist_, parent_, parent_letter_;
};

}  // namespace

std::unique_ptr<GroupModel> make_free_abelian(int rank) {
  if (rank < 1) raise(ErrorKind::Validation, "rank must be positive");
  return std::make_unique<FreeAbelian>(rank);
}

std::unique_ptr<GroupModel> make_free(int rank) {
  if (rank < 1) raise(ErrorKind::Validation, "rank must be positive");
  return std::make_unique<Free>(rank);
}

std::unique_ptr<GroupModel> make_direct_product(std::vector<std::unique_ptr<GroupModel>> factors) {
  return std::make_unique<DirectProduct>(std::move(factors));
}

std::unique_ptr<GroupModel> make_free_product(std::vector<std::unique_ptr<GroupModel>> factors) {
  return std::make_unique<FreeProduct>(std::move(factors));
}

std::unique_ptr<GroupModel> make_table(std::vector<std::vector<int>> right, int identity,
                                       std::vector<std::string> generator_names) {
  return std::make_unique<Table>(std::move(right), identity, std::move(generator_names));
}

Word parse_word(std::string_view text, int generator_count) {
  Word w;
  std::size_t i = 0;
  auto fail = [&](const std::string& why) {
    raise(ErrorKind::Parse, "word '" + std::string(text) + "': " + why);
  };
  if (text == "1") return w;
  while (i < text.size()) {
    const char c = text[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    if (c < 'a' || c > 'z') fail(std::string("unexpected '") + c + "'");
    const int g = c - 'a' + 1;
    if (g > generator_count) fail(std::string("generator '") + c + "' not in the model");
    ++i;
    long exponent = 1;
    if (i < text.size() && text[i] == '^') {
      ++i;
      const std::size_t start = i;
      if (i < text.size() && text[i] == '-') ++i;
      while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
      if (i == start || (i == start + 1 && text[start] == '-')) fail("missing exponent");
      exponent = std::strtol(std::string(text.substr(start, i - start)).c_str(), nullptr, 10);
    }
    for (long k = 0; k < std::labs(exponent); ++k) w.push_back(exponent > 0 ? g : -g);
  }
  return w;
}

std::string format_word(const Word& w) {
  if (w.empty()) return "1";
  std::string out;
  std::size_t i = 0;
  while (i < w.size()) {
    std::size_t j = i;
    while (j < w.size() && w[j] == w[i]) ++j;
    const int run = static_cast<int>(j - i);
    const int g = std::abs(w[i]);
    out += static_cast<char>('a' + g - 1);
    const int exponent = w[i] > 0 ? run : -run;
    if (exponent != 1) out += "^" + std::to_string(exponent);
    i = j;
  }
  return out;
}

}  // namespace qmedian
