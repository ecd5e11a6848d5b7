#pragma once

// Formula trees for logical expressions extracted from QA samples.
//
// Node kinds:
//   Atom        predicate application, Name(args...) or a bare Name
//   Not         negation
//   And / Or    n-ary, always flattened (no And directly under And)
//   Implies     antecedent -> consequent
//   Iff         left <-> right
//   Quantified  forall / exists over a list of variable names
//   Opaque      text the parser could not read (lenient mode only)
//
// Relations written infix (x = y, x ≠ y, a < b, ...) are Atoms whose
// predicate is the relation symbol.

#include <cstddef>
#include <memory>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace dri::logic {

// Heap cell with value semantics; lets recursive variants stay copyable.
template <typename T>
class Box {
 public:
  Box(T value) : ptr_(std::make_unique<T>(std::move(value))) {}  // NOLINT(implicit)
  Box(const Box& other) : ptr_(std::make_unique<T>(*other.ptr_)) {}
  Box(Box&&) noexcept = default;
  Box& operator=(const Box& other) {
    if (this != &other) ptr_ = std::make_unique<T>(*other.ptr_);
    return *this;
  }
  Box& operator=(Box&&) noexcept = default;
  ~Box() = default;

  const T& operator*() const { return *ptr_; }
  const T* operator->() const { return ptr_.get(); }
  T& operator*() { return *ptr_; }
  T* operator->() { return ptr_.get(); }

  friend bool operator==(const Box& a, const Box& b) { return *a == *b; }

 private:
  std::unique_ptr<T> ptr_;
};

struct Formula;

struct Term {
  struct Constant {
    std::string name;
    friend bool operator==(const Constant&, const Constant&) = default;
  };
  struct Variable {
    std::string name;
    friend bool operator==(const Variable&, const Variable&) = default;
  };
  // A full formula in argument position, e.g. TrueStatement(A(x) ∨ B(x)).
  struct Embedded {
    Box<Formula> formula;
    friend bool operator==(const Embedded&, const Embedded&) = default;
  };

  std::variant<Constant, Variable, Embedded> value;

  friend bool operator==(const Term&, const Term&) = default;
};

enum class Quantifier { Forall, Exists };

struct Formula {
  struct Atom {
    std::string predicate;
    std::vector<Term> args;
    friend bool operator==(const Atom&, const Atom&) = default;
  };
  struct Not {
    Box<Formula> child;
    friend bool operator==(const Not&, const Not&) = default;
  };
  struct And {
    std::vector<Formula> children;
    friend bool operator==(const And&, const And&) = default;
  };
  struct Or {
    std::vector<Formula> children;
    friend bool operator==(const Or&, const Or&) = default;
  };
  struct Implies {
    Box<Formula> antecedent;
    Box<Formula> consequent;
    friend bool operator==(const Implies&, const Implies&) = default;
  };
  struct Iff {
    Box<Formula> left;
    Box<Formula> right;
    friend bool operator==(const Iff&, const Iff&) = default;
  };
  struct Quantified {
    Quantifier kind;
    std::vector<std::string> variables;
    Box<Formula> body;
    friend bool operator==(const Quantified&, const Quantified&) = default;
  };
  struct Opaque {
    std::string text;
    std::string reason;
    friend bool operator==(const Opaque&, const Opaque&) = default;
  };

  using Node = std::variant<Atom, Not, And, Or, Implies, Iff, Quantified, Opaque>;
  Node node;

  template <typename T>
  bool is() const noexcept {
    return std::holds_alternative<T>(node);
  }
  template <typename T>
  const T& as() const {
    return std::get<T>(node);
  }

  friend bool operator==(const Formula&, const Formula&) = default;
};

// Builders. conj/disj flatten nested And/Or and collapse a single child.
Term constant(std::string name);
Term variable(std::string name);
Term embedded(Formula f);

Formula atom(std::string predicate, std::vector<Term> args = {});
Formula neg(Formula child);
Formula conj(std::vector<Formula> children);
Formula disj(std::vector<Formula> children);
Formula implies(Formula antecedent, Formula consequent);
Formula iff(Formula left, Formula right);
Formula forall(std::vector<std::string> variables, Formula body);
Formula exists(std::vector<std::string> variables, Formula body);
Formula opaque(std::string text, std::string reason);

// Number of nodes (formula nodes plus terms), used to bound generators.
std::size_t node_count(const Formula& f);

}  // namespace dri::logic
