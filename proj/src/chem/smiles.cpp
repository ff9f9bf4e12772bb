//
// Project covgen - Copyright 2026 covgen developers.
// SPDX-License-Identifier: Apache-2.0
//

#include "covgen/chem/smiles.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <optional>
#include <vector>

#include "covgen/chem/element.hpp"

namespace covgen::chem {

const char *to_string(SmilesErrorKind kind) {
  switch (kind) {
    case SmilesErrorKind::EmptyInput: return "empty input";
    case SmilesErrorKind::BadSyntax: return "bad syntax";
    case SmilesErrorKind::UnknownSymbol: return "unknown symbol";
    case SmilesErrorKind::UnbalancedParenthesis: return "unbalanced parenthesis";
    case SmilesErrorKind::UnclosedRingBond: return "unclosed ring bond";
    case SmilesErrorKind::ValenceViolation: return "valence violation";
    case SmilesErrorKind::AromaticityError: return "aromaticity error";
  }
  return "smiles error";
}

SmilesError::SmilesError(SmilesErrorKind kind, size_t position,
                         const std::string &detail)
    : std::runtime_error(std::string(to_string(kind)) + " at position " +
                         std::to_string(position) + ": " + detail),
      kind_(kind),
      position_(position) {}

namespace {

[[noreturn]] void fail(SmilesErrorKind kind, size_t pos, std::string detail) {
  throw SmilesError(kind, pos, std::move(detail));
}

bool is_bond_char(char c) {
  return c == '-' || c == '=' || c == '#' || c == ':' || c == '/' || c == '\\';
}

BondOrder bond_order_of(char c) {
  switch (c) {
    case '=': return BondOrder::Double;
    case '#': return BondOrder::Triple;
    case ':': return BondOrder::Aromatic;
    default: return BondOrder::Single;  // '-', '/' and '\' collapse to single
  }
}

struct PendingBond {
  BondOrder order;
  size_t pos;
};

struct RingSlot {
  int atom;
  std::optional<BondOrder> order;
  size_t pos;
};

struct RawBond {
  int a;
  int b;
  BondOrder order;
  bool implicit;  // no bond symbol written
  size_t pos;
};

class Parser {
public:
  explicit Parser(std::string_view text) : text_(text) {}

  void run() {
    if (text_.empty()) fail(SmilesErrorKind::EmptyInput, 0, "no atoms");
    while (i_ < text_.size()) {
      const char c = text_[i_];
      if (c == '(') {
        if (prev_ < 0)
          fail(SmilesErrorKind::UnbalancedParenthesis, i_,
               "branch before any atom");
        if (pending_)
          fail(SmilesErrorKind::BadSyntax, pending_->pos,
               "bond symbol before '('");
        branch_stack_.push_back({prev_, atoms_.size()});
        ++i_;
      } else if (c == ')') {
        if (pending_)
          fail(SmilesErrorKind::BadSyntax, pending_->pos,
               "bond symbol before ')'");
        if (branch_stack_.empty())
          fail(SmilesErrorKind::UnbalancedParenthesis, i_,
               "')' without matching '('");
        if (atoms_.size() == branch_stack_.back().second)
          fail(SmilesErrorKind::BadSyntax, i_, "empty branch");
        prev_ = branch_stack_.back().first;
        branch_stack_.pop_back();
        ++i_;
      } else if (c == '.') {
        if (pending_)
          fail(SmilesErrorKind::BadSyntax, pending_->pos,
               "bond symbol before '.'");
        if (prev_ < 0)
          fail(SmilesErrorKind::BadSyntax, i_, "misplaced dot separator");
        prev_ = -1;
        ++i_;
      } else if (is_bond_char(c)) {
        if (pending_)
          fail(SmilesErrorKind::BadSyntax, i_, "two bond symbols in a row");
        if (prev_ < 0)
          fail(SmilesErrorKind::BadSyntax, i_, "bond symbol before any atom");
        pending_ = PendingBond{bond_order_of(c), i_};
        ++i_;
      } else if (std::isdigit(static_cast<unsigned char>(c)) || c == '%') {
        ring_closure();
      } else if (c == '[') {
        parse_bracket_atom();
      } else if (std::isalpha(static_cast<unsigned char>(c))) {
        parse_organic_atom();
      } else {
        fail(SmilesErrorKind::UnknownSymbol, i_,
             std::string("unexpected character '") + c + "'");
      }
    }
    if (pending_)
      fail(SmilesErrorKind::BadSyntax, pending_->pos,
           "dangling bond symbol at end of input");
    if (!branch_stack_.empty())
      fail(SmilesErrorKind::UnbalancedParenthesis, text_.size(),
           "unclosed '('");
    if (!ring_slots_.empty())
      fail(SmilesErrorKind::UnclosedRingBond, ring_slots_.begin()->second.pos,
           "ring bond " + std::to_string(ring_slots_.begin()->first) +
               " never closed");
    if (atoms_.empty()) fail(SmilesErrorKind::EmptyInput, 0, "no atoms");
  }

  std::vector<Atom> atoms_;
  std::vector<size_t> atom_pos_;
  std::vector<uint8_t> bracket_;
  std::vector<RawBond> raw_bonds_;

private:
  void add_atom(Atom atom, bool bracket, size_t pos) {
    const int idx = static_cast<int>(atoms_.size());
    atoms_.push_back(atom);
    atom_pos_.push_back(pos);
    bracket_.push_back(bracket ? 1 : 0);
    if (prev_ >= 0) {
      RawBond rb;
      rb.a = prev_;
      rb.b = idx;
      rb.order = pending_ ? pending_->order : BondOrder::Single;
      rb.implicit = !pending_;
      rb.pos = pending_ ? pending_->pos : pos;
      raw_bonds_.push_back(rb);
    }
    pending_.reset();
    prev_ = idx;
  }

  void ring_closure() {
    const size_t pos = i_;
    int number;
    if (text_[i_] == '%') {
      if (i_ + 2 >= text_.size() ||
          !std::isdigit(static_cast<unsigned char>(text_[i_ + 1])) ||
          !std::isdigit(static_cast<unsigned char>(text_[i_ + 2])))
        fail(SmilesErrorKind::BadSyntax, pos, "'%' needs two digits");
      number = (text_[i_ + 1] - '0') * 10 + (text_[i_ + 2] - '0');
      i_ += 3;
    } else {
      number = text_[i_] - '0';
      ++i_;
    }
    if (prev_ < 0)
      fail(SmilesErrorKind::BadSyntax, pos, "ring closure before any atom");

    auto it = ring_slots_.find(number);
    if (it == ring_slots_.end()) {
      std::optional<BondOrder> order;
      if (pending_) order = pending_->order;
      ring_slots_.emplace(number, RingSlot{prev_, order, pos});
      pending_.reset();
      return;
    }
    const RingSlot slot = it->second;
    ring_slots_.erase(it);
    if (slot.atom == prev_)
      fail(SmilesErrorKind::BadSyntax, pos, "ring bond to the same atom");
    std::optional<BondOrder> order = slot.order;
    if (pending_) {
      if (order && *order != pending_->order)
        fail(SmilesErrorKind::BadSyntax, pos,
             "ring bond order conflicts with its opening");
      order = pending_->order;
    }
    for (const RawBond &rb : raw_bonds_) {
      if ((rb.a == slot.atom && rb.b == prev_) ||
          (rb.a == prev_ && rb.b == slot.atom))
        fail(SmilesErrorKind::BadSyntax, pos,
             "duplicate bond between two atoms");
    }
    RawBond rb;
    rb.a = slot.atom;
    rb.b = prev_;
    rb.order = order ? *order : BondOrder::Single;
    rb.implicit = !order;
    rb.pos = pos;
    raw_bonds_.push_back(rb);
    pending_.reset();
  }

  void parse_organic_atom() {
    const size_t pos = i_;
    const char c = text_[i_];
    const Element *el = nullptr;
    bool aromatic = false;
    if (std::isupper(static_cast<unsigned char>(c))) {
      if (i_ + 1 < text_.size() &&
          std::islower(static_cast<unsigned char>(text_[i_ + 1]))) {
        const std::string two{c, text_[i_ + 1]};
        if (const Element *t = find_element(two); t && t->organic_subset) {
          el = t;
          i_ += 2;
        }
      }
      if (!el) {
        const std::string one{c};
        if (const Element *t = find_element(one); t && t->organic_subset) {
          el = t;
          ++i_;
        }
      }
    } else {
      static constexpr char kAromaticSubset[] = {'b', 'c', 'n', 'o', 'p', 's'};
      if (std::find(std::begin(kAromaticSubset), std::end(kAromaticSubset),
                    c) != std::end(kAromaticSubset)) {
        const char upper = static_cast<char>(std::toupper(c));
        el = find_element(std::string{upper});
        aromatic = true;
        ++i_;
      }
    }
    if (!el)
      fail(SmilesErrorKind::UnknownSymbol, pos,
           std::string("no such organic-subset atom '") + c + "'");
    Atom atom;
    atom.atomic_number = static_cast<uint8_t>(el->atomic_number);
    atom.aromatic = aromatic;
    add_atom(atom, /*bracket=*/false, pos);
  }

  void parse_bracket_atom() {
    const size_t pos = i_;
    ++i_;  // '['
    auto peek = [&]() -> char {
      return i_ < text_.size() ? text_[i_] : '\0';
    };
    // isotope label: tolerated, not modeled
    while (std::isdigit(static_cast<unsigned char>(peek()))) ++i_;

    const size_t sym_pos = i_;
    const Element *el = nullptr;
    bool aromatic = false;
    const char c = peek();
    if (std::isupper(static_cast<unsigned char>(c))) {
      if (i_ + 1 < text_.size() &&
          std::islower(static_cast<unsigned char>(text_[i_ + 1]))) {
        const std::string two{c, text_[i_ + 1]};
        if (const Element *t = find_element(two)) {
          el = t;
          i_ += 2;
        }
      }
      if (!el) {
        if (const Element *t = find_element(std::string{c})) {
          el = t;
          ++i_;
        }
      }
    } else if (std::islower(static_cast<unsigned char>(c))) {
      aromatic = true;
      if (i_ + 1 < text_.size()) {
        const char d = text_[i_ + 1];
        const std::string two{static_cast<char>(std::toupper(c)), d};
        if ((two == "Se" || two == "As")) {
          el = find_element(two);
          i_ += 2;
        }
      }
      if (!el) {
        static constexpr char kAromaticSubset[] = {'b', 'c', 'n',
                                                   'o', 'p', 's'};
        if (std::find(std::begin(kAromaticSubset), std::end(kAromaticSubset),
                      c) != std::end(kAromaticSubset)) {
          el = find_element(std::string{static_cast<char>(std::toupper(c))});
          ++i_;
        }
      }
    }
    if (!el)
      fail(SmilesErrorKind::UnknownSymbol, sym_pos,
           "unknown element symbol in brackets");
    if (aromatic && !el->can_be_aromatic)
      fail(SmilesErrorKind::AromaticityError, sym_pos,
           std::string(el->symbol) + " cannot be aromatic");
    if (el->atomic_number == 1)
      fail(SmilesErrorKind::BadSyntax, sym_pos,
           "explicit hydrogen atoms are not modeled; use H counts");

    Stereo stereo = Stereo::None;
    if (peek() == '@') {
      ++i_;
      if (peek() == '@') {
        stereo = Stereo::CW;
        ++i_;
      } else {
        stereo = Stereo::CCW;
      }
    }

    int hcount = 0;
    if (peek() == 'H') {
      ++i_;
      hcount = 1;
      int digits = 0;
      while (std::isdigit(static_cast<unsigned char>(peek())) && digits < 2) {
        hcount = (digits == 0 ? 0 : hcount * 10) + (peek() - '0');
        ++i_;
        ++digits;
      }
    }

    int charge = 0;
    if (peek() == '+' || peek() == '-') {
      const int sign = peek() == '+' ? 1 : -1;
      const char mark = peek();
      ++i_;
      if (std::isdigit(static_cast<unsigned char>(peek()))) {
        charge = sign * (peek() - '0');
        ++i_;
      } else {
        charge = sign;
        while (peek() == mark) {
          charge += sign;
          ++i_;
        }
      }
    }

    if (peek() == ':') {  // atom class label: tolerated, not modeled
      ++i_;
      if (!std::isdigit(static_cast<unsigned char>(peek())))
        fail(SmilesErrorKind::BadSyntax, i_, "atom class needs a number");
      while (std::isdigit(static_cast<unsigned char>(peek()))) ++i_;
    }

    if (peek() != ']')
      fail(SmilesErrorKind::BadSyntax, i_,
           "expected ']' to close bracket atom");
    ++i_;

    if (charge < -9 || charge > 9)
      fail(SmilesErrorKind::BadSyntax, pos, "formal charge out of range");
    if (hcount > 9)
      fail(SmilesErrorKind::BadSyntax, pos, "hydrogen count out of range");

    Atom atom;
    atom.atomic_number = static_cast<uint8_t>(el->atomic_number);
    atom.formal_charge = static_cast<int8_t>(charge);
    atom.aromatic = aromatic;
    atom.explicit_h = static_cast<uint8_t>(hcount);
    atom.stereo = stereo;
    add_atom(atom, /*bracket=*/true, pos);
  }

  std::string_view text_;
  size_t i_ = 0;
  int prev_ = -1;
  std::optional<PendingBond> pending_;
  std::vector<std::pair<int, size_t>> branch_stack_;
  std::map<int, RingSlot> ring_slots_;
};

// Pi-system role of one aromatic atom: whether it must take part in one
// kekule double bond, and how many electrons it donates to the ring system.
struct PiRole {
  bool needs_double = false;
  int electrons = 0;
};

}  // namespace

class GraphFinalizer {
public:
  static void finalize(MolecularGraph &g, const std::vector<uint8_t> &implicit,
                       const std::vector<uint8_t> &bracket,
                       const std::vector<size_t> &atom_pos,
                       const std::vector<size_t> &bond_pos) {
    const int n = g.atom_count();
    const int m = g.bond_count();

    // Unmarked bonds between two aromatic ring atoms are aromatic; every
    // other unmarked bond stays single.
    for (int e = 0; e < m; ++e) {
      Bond &b = g.bonds_[static_cast<size_t>(e)];
      if (implicit[static_cast<size_t>(e)] && b.in_ring &&
          g.atom(b.a).aromatic && g.atom(b.b).aromatic)
        b.order = BondOrder::Aromatic;
    }
    for (int e = 0; e < m; ++e) {
      const Bond &b = g.bond(e);
      if (b.order != BondOrder::Aromatic) continue;
      if (!g.atom(b.a).aromatic || !g.atom(b.b).aromatic)
        fail(SmilesErrorKind::AromaticityError, bond_pos[static_cast<size_t>(e)],
             "aromatic bond touching a non-aromatic atom");
      if (!b.in_ring)
        fail(SmilesErrorKind::AromaticityError, bond_pos[static_cast<size_t>(e)],
             "aromatic bond outside any ring");
    }
    for (int i = 0; i < n; ++i) {
      if (!g.atom(i).aromatic) continue;
      if (!g.atom(i).in_ring)
        fail(SmilesErrorKind::AromaticityError, atom_pos[static_cast<size_t>(i)],
             "aromatic atom not in a ring");
      int arom_bonds = 0;
      for (const int e : g.incident_bonds(i))
        if (g.bond(e).order == BondOrder::Aromatic) ++arom_bonds;
      if (arom_bonds < 2)
        fail(SmilesErrorKind::AromaticityError, atom_pos[static_cast<size_t>(i)],
             "aromatic atom needs two aromatic ring bonds");
    }

    // Kekulization: perfect matching over the aromatic atoms that must carry
    // one double bond each.
    std::vector<PiRole> role(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) {
      if (g.atom(i).aromatic) role[static_cast<size_t>(i)] = pi_role(g, i);
    }
    std::vector<int> match(static_cast<size_t>(n), -1);
    {
      long steps = 0;
      if (!match_pi(g, role, match, 0, steps)) {
        int culprit = 0;
        for (int i = 0; i < n; ++i) {
          if (role[static_cast<size_t>(i)].needs_double && match[i] < 0) {
            culprit = i;
            break;
          }
        }
        fail(SmilesErrorKind::AromaticityError,
             atom_pos[static_cast<size_t>(culprit)],
             "aromatic ring cannot be kekulized");
      }
    }

    g.kekule_.assign(static_cast<size_t>(m), BondOrder::Single);
    for (int e = 0; e < m; ++e) {
      const Bond &b = g.bond(e);
      g.kekule_[static_cast<size_t>(e)] =
          b.order == BondOrder::Aromatic ? BondOrder::Single : b.order;
    }
    for (int i = 0; i < n; ++i) {
      if (match[i] > i) {
        const int e = g.find_bond(i, match[i]);
        g.kekule_[static_cast<size_t>(e)] = BondOrder::Double;
      }
    }

    // Electron count rule over each aromatic bond component.
    {
      std::vector<int> comp(static_cast<size_t>(n), -1);
      for (int start = 0; start < n; ++start) {
        if (comp[start] != -1 || !g.atom(start).aromatic) continue;
        int electrons = 0;
        std::vector<int> stack{start};
        comp[start] = start;
        while (!stack.empty()) {
          const int v = stack.back();
          stack.pop_back();
          electrons += role[static_cast<size_t>(v)].electrons;
          for (const int e : g.incident_bonds(v)) {
            if (g.bond(e).order != BondOrder::Aromatic) continue;
            const int w = g.bond(e).other(v);
            if (comp[w] == -1) {
              comp[w] = start;
              stack.push_back(w);
            }
          }
        }
        if (electrons % 4 != 2)
          fail(SmilesErrorKind::AromaticityError,
               atom_pos[static_cast<size_t>(start)],
               "aromatic system has " + std::to_string(electrons) +
                   " pi electrons");
      }
    }

    // Hydrogen filling for organic-subset atoms, then the valence gate for
    // everything.
    for (int i = 0; i < n; ++i) {
      Atom &a = g.atoms_[static_cast<size_t>(i)];
      const Element *el = element_by_number(a.atomic_number);
      const int sigma = g.bond_order_sum(i);
      if (!bracket[static_cast<size_t>(i)]) {
        const auto allowed = allowed_valences(*el, 0);
        int fill = -1;
        for (const int v : allowed) {
          if (v >= sigma) {
            fill = v - sigma;
            break;
          }
        }
        if (fill < 0)
          fail(SmilesErrorKind::ValenceViolation,
               atom_pos[static_cast<size_t>(i)],
               std::string(el->symbol) + " with bond order sum " +
                   std::to_string(sigma));
        // Aromatic lone-pair donors keep their hydrogen budget at zero; the
        // bracket form is the only way to put an H on them.
        a.explicit_h = static_cast<uint8_t>(fill);
      }
      const auto allowed = allowed_valences(*el, a.formal_charge);
      if (!allowed.empty()) {
        const int total = sigma + a.explicit_h;
        if (total > allowed.back())
          fail(SmilesErrorKind::ValenceViolation,
               atom_pos[static_cast<size_t>(i)],
               std::string(el->symbol) + " reaches valence " +
                   std::to_string(total));
      }
    }
  }

private:
  static PiRole pi_role(const MolecularGraph &g, int i) {
    const Atom &a = g.atom(i);
    const int q = a.formal_charge;
    bool exo_multiple = false;
    for (const int e : g.incident_bonds(i)) {
      const BondOrder o = g.bond(e).order;
      if (o == BondOrder::Double || o == BondOrder::Triple) exo_multiple = true;
    }
    const int conn = a.degree + a.explicit_h;
    switch (a.atomic_number) {
      case 5:  // B
        return {false, 0};
      case 6:  // C
        if (q > 0) return {false, 0};
        if (q < 0) return {false, 2};
        if (exo_multiple) return {false, 0};
        return {true, 1};
      case 7:   // N
      case 15:  // P
      case 33:  // As
        if (q < 0) return {false, 2};
        if (q > 0) return {true, 1};
        if (conn >= 3) return {false, 2};
        return {true, 1};
      case 8:   // O
      case 16:  // S
      case 34:  // Se
        if (q > 0) return {true, 1};
        return {false, 2};
      default:
        return {false, 0};
    }
  }

  static bool match_pi(const MolecularGraph &g, const std::vector<PiRole> &role,
                       std::vector<int> &match, int from, long &steps) {
    const int n = g.atom_count();
    int u = -1;
    for (int i = from; i < n; ++i) {
      if (role[static_cast<size_t>(i)].needs_double && match[i] < 0) {
        u = i;
        break;
      }
    }
    if (u < 0) return true;
    if (++steps > 2'000'000) return false;
    for (const int e : g.incident_bonds(u)) {
      if (g.bond(e).order != BondOrder::Aromatic) continue;
      const int w = g.bond(e).other(u);
      if (!role[static_cast<size_t>(w)].needs_double || match[w] >= 0) continue;
      match[u] = w;
      match[w] = u;
      if (match_pi(g, role, match, u + 1, steps)) return true;
      match[u] = -1;
      match[w] = -1;
    }
    return false;
  }
};

MolecularGraph parse_smiles(std::string_view text) {
  // SMILES proper ends at the first whitespace; surrounding space is noise.
  size_t begin = 0;
  size_t end = text.size();
  while (begin < end && std::isspace(static_cast<unsigned char>(text[begin])))
    ++begin;
  while (end > begin && std::isspace(static_cast<unsigned char>(text[end - 1])))
    --end;
  const std::string_view body = text.substr(begin, end - begin);
  for (const char c : body) {
    if (std::isspace(static_cast<unsigned char>(c)))
      fail(SmilesErrorKind::BadSyntax, 0, "whitespace inside input");
  }

  Parser parser(body);
  parser.run();

  std::vector<Bond> bonds;
  std::vector<uint8_t> implicit;
  std::vector<size_t> bond_pos;
  bonds.reserve(parser.raw_bonds_.size());
  for (const RawBond &rb : parser.raw_bonds_) {
    Bond b;
    b.a = rb.a;
    b.b = rb.b;
    b.order = rb.order;
    bonds.push_back(b);
    implicit.push_back(rb.implicit ? 1 : 0);
    bond_pos.push_back(rb.pos);
  }

  MolecularGraph graph(std::move(parser.atoms_), std::move(bonds),
                       std::string(body));
  GraphFinalizer::finalize(graph, implicit, parser.bracket_, parser.atom_pos_,
                           bond_pos);
  return graph;
}

bool smiles_valid(std::string_view text) {
  try {
    parse_smiles(text);
    return true;
  } catch (const SmilesError &) {
    return false;
  }
}

}  // namespace covgen::chem
