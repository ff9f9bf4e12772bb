//
// Project covgen - Copyright 2026 covgen developers.
// SPDX-License-Identifier: Apache-2.0
//

#include "covgen/chem/canonical.hpp"

#include <algorithm>
#include <cstdio>
#include <numeric>
#include <set>
#include <stdexcept>

#include "covgen/chem/element.hpp"

namespace covgen::chem {
namespace {

// Refinement keys compare as flat integer sequences.
using Key = std::vector<int>;

std::vector<int> dense_ranks(const std::vector<Key> &keys) {
  const int n = static_cast<int>(keys.size());
  std::vector<int> idx(static_cast<size_t>(n));
  std::iota(idx.begin(), idx.end(), 0);
  std::sort(idx.begin(), idx.end(), [&](int a, int b) {
    return keys[static_cast<size_t>(a)] < keys[static_cast<size_t>(b)];
  });
  std::vector<int> rank(static_cast<size_t>(n), 0);
  int r = 0;
  for (int i = 0; i < n; ++i) {
    if (i > 0 && keys[static_cast<size_t>(idx[i])] !=
                     keys[static_cast<size_t>(idx[i - 1])])
      ++r;
    rank[static_cast<size_t>(idx[i])] = r;
  }
  return rank;
}

int class_count(const std::vector<int> &rank) {
  return rank.empty() ? 0 : *std::max_element(rank.begin(), rank.end()) + 1;
}

std::vector<int> initial_ranks(const MolecularGraph &g) {
  std::vector<Key> keys;
  keys.reserve(static_cast<size_t>(g.atom_count()));
  for (const Atom &a : g.atoms()) {
    keys.push_back({a.atomic_number, a.formal_charge, a.degree, a.explicit_h,
                    a.aromatic ? 1 : 0, a.in_ring ? 1 : 0});
  }
  return dense_ranks(keys);
}

// Iterative neighborhood refinement. Bond labels use declared orders so that
// aromatic rings stay symmetric.
std::vector<int> refine(const MolecularGraph &g, std::vector<int> rank) {
  const int n = g.atom_count();
  int classes = class_count(rank);
  while (true) {
    std::vector<Key> keys(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) {
      Key k{rank[static_cast<size_t>(i)]};
      std::vector<std::pair<int, int>> nb;
      for (const int e : g.incident_bonds(i)) {
        const Bond &b = g.bond(e);
        nb.emplace_back(static_cast<int>(b.order),
                        rank[static_cast<size_t>(b.other(i))]);
      }
      std::sort(nb.begin(), nb.end());
      for (const auto &[o, r] : nb) {
        k.push_back(o);
        k.push_back(r);
      }
      keys[static_cast<size_t>(i)] = std::move(k);
    }
    std::vector<int> next = dense_ranks(keys);
    const int next_classes = class_count(next);
    rank = std::move(next);
    if (next_classes == classes) return rank;
    classes = next_classes;
  }
}

std::vector<int> distinguish(const MolecularGraph &g,
                             const std::vector<int> &rank, int atom) {
  std::vector<Key> keys;
  keys.reserve(rank.size());
  for (int i = 0; i < static_cast<int>(rank.size()); ++i)
    keys.push_back({rank[static_cast<size_t>(i)], i == atom ? 0 : 1});
  return refine(g, dense_ranks(keys));
}

// First rank class holding two atoms of one component; returns its members in
// that component, or empty when the numbering is fully resolved.
std::vector<int> ambiguous_class(const MolecularGraph &g,
                                 const std::vector<int> &rank) {
  const int n = g.atom_count();
  const auto &comp = g.component_of();
  const int classes = class_count(rank);
  std::vector<std::vector<int>> members(static_cast<size_t>(classes));
  for (int i = 0; i < n; ++i)
    members[static_cast<size_t>(rank[static_cast<size_t>(i)])].push_back(i);
  for (const auto &cls : members) {
    if (cls.size() < 2) continue;
    for (size_t j = 1; j < cls.size(); ++j) {
      if (comp[static_cast<size_t>(cls[j])] ==
          comp[static_cast<size_t>(cls[0])]) {
        std::vector<int> out;
        const int c = comp[static_cast<size_t>(cls[0])];
        for (const int a : cls)
          if (comp[static_cast<size_t>(a)] == c) out.push_back(a);
        return out;
      }
    }
  }
  return {};
}

std::string charge_suffix(int q) {
  if (q == 0) return "";
  std::string s(1, q > 0 ? '+' : '-');
  if (q > 1 || q < -1) s += std::to_string(q > 0 ? q : -q);
  return s;
}

class Writer {
public:
  Writer(const MolecularGraph &g, const std::vector<int> &rank)
      : g_(g), rank_(rank) {}

  // Emits every component, sorts the strings, joins with '.'. Fills
  // output_position for each atom.
  std::string write(std::vector<int> *output_position) {
    const int n = g_.atom_count();
    preorder_.assign(static_cast<size_t>(n), -1);
    children_.assign(static_cast<size_t>(n), {});
    ring_open_at_.assign(static_cast<size_t>(n), {});
    ring_close_at_.assign(static_cast<size_t>(n), {});

    struct Piece {
      std::string text;
      std::vector<int> atoms;  // emission order within the piece
    };
    std::vector<Piece> pieces;
    std::vector<char> done(static_cast<size_t>(n), 0);
    for (int c = 0; c < g_.component_count(); ++c) {
      int root = -1;
      for (int i = 0; i < n; ++i) {
        if (g_.component_of()[static_cast<size_t>(i)] != c || done[i]) continue;
        if (root < 0 || rank_[static_cast<size_t>(i)] <
                            rank_[static_cast<size_t>(root)])
          root = i;
      }
      if (root < 0) continue;
      Piece p;
      build_tree(root);
      emit(root, &p.text, &p.atoms);
      for (const int a : p.atoms) done[static_cast<size_t>(a)] = 1;
      pieces.push_back(std::move(p));
    }
    std::sort(pieces.begin(), pieces.end(),
              [](const Piece &a, const Piece &b) { return a.text < b.text; });
    std::string out;
    std::vector<int> order;
    for (size_t i = 0; i < pieces.size(); ++i) {
      if (i) out += '.';
      out += pieces[i].text;
      order.insert(order.end(), pieces[i].atoms.begin(),
                   pieces[i].atoms.end());
    }
    if (output_position) {
      output_position->assign(static_cast<size_t>(n), -1);
      for (int pos = 0; pos < static_cast<int>(order.size()); ++pos)
        (*output_position)[static_cast<size_t>(order[pos])] = pos;
    }
    return out;
  }

private:
  struct RingMark {
    int digit;
    int bond;
  };

  bool lower_first(int a, int b) const {
    const int ra = rank_[static_cast<size_t>(a)];
    const int rb = rank_[static_cast<size_t>(b)];
    return ra != rb ? ra < rb : a < b;
  }

  void dfs(int v, int parent_edge, int &clock, std::vector<int> &ring_bonds) {
    preorder_[static_cast<size_t>(v)] = clock++;
    std::vector<int> nbrs(g_.neighbors(v).begin(), g_.neighbors(v).end());
    std::sort(nbrs.begin(), nbrs.end(),
              [&](int a, int b) { return lower_first(a, b); });
    for (const int w : nbrs) {
      const int e = g_.find_bond(v, w);
      if (e == parent_edge) continue;
      if (preorder_[static_cast<size_t>(w)] == -1) {
        children_[static_cast<size_t>(v)].push_back(w);
        dfs(w, e, clock, ring_bonds);
      } else if (preorder_[static_cast<size_t>(w)] <
                 preorder_[static_cast<size_t>(v)]) {
        // back edge, recorded once at its later endpoint
        ring_bonds.push_back(e);
      }
    }
  }

  void build_tree(int root) {
    std::vector<int> ring_bonds;
    int clock = 0;
    dfs(root, -1, clock, ring_bonds);
    // Digit assignment: openers in preorder of the closing atom.
    std::sort(ring_bonds.begin(), ring_bonds.end(), [&](int e1, int e2) {
      const Bond &b1 = g_.bond(e1);
      const Bond &b2 = g_.bond(e2);
      const int o1 = std::min(preorder_[static_cast<size_t>(b1.a)],
                              preorder_[static_cast<size_t>(b1.b)]);
      const int o2 = std::min(preorder_[static_cast<size_t>(b2.a)],
                              preorder_[static_cast<size_t>(b2.b)]);
      if (o1 != o2) return o1 < o2;
      return std::max(preorder_[static_cast<size_t>(b1.a)],
                      preorder_[static_cast<size_t>(b1.b)]) <
             std::max(preorder_[static_cast<size_t>(b2.a)],
                      preorder_[static_cast<size_t>(b2.b)]);
    });
    for (const int e : ring_bonds) {
      const Bond &b = g_.bond(e);
      const bool a_first = preorder_[static_cast<size_t>(b.a)] <
                           preorder_[static_cast<size_t>(b.b)];
      const int opener = a_first ? b.a : b.b;
      const int closer = a_first ? b.b : b.a;
      ring_open_at_[static_cast<size_t>(opener)].push_back({-1, e});
      ring_close_at_[static_cast<size_t>(closer)].push_back({-1, e});
    }
  }

  std::string bond_token(int e) const {
    const Bond &b = g_.bond(e);
    switch (b.order) {
      case BondOrder::Double: return "=";
      case BondOrder::Triple: return "#";
      case BondOrder::Aromatic: return "";
      case BondOrder::Single:
        return (g_.atom(b.a).aromatic && g_.atom(b.b).aromatic) ? "-" : "";
    }
    return "";
  }

  std::string atom_token(int i) const {
    const Atom &a = g_.atom(i);
    const Element *el = element_by_number(a.atomic_number);
    if (!el) throw std::logic_error("atom with unknown element");
    std::string sym = el->symbol;
    if (a.aromatic)
      for (char &c : sym) c = static_cast<char>(std::tolower(c));

    bool bracket = false;
    if (a.formal_charge != 0 || !el->organic_subset) bracket = true;
    if (a.aromatic && a.atomic_number != 6 && a.explicit_h > 0) bracket = true;
    if (!bracket) {
      const int sigma = g_.bond_order_sum(i);
      const auto allowed = allowed_valences(*el, 0);
      int fill = -1;
      for (const int v : allowed) {
        if (v >= sigma) {
          fill = v - sigma;
          break;
        }
      }
      if (fill != a.explicit_h) bracket = true;
    }
    if (!bracket) return sym;
    std::string out = "[" + sym;
    if (a.explicit_h > 0) {
      out += 'H';
      if (a.explicit_h > 1) out += std::to_string(a.explicit_h);
    }
    out += charge_suffix(a.formal_charge);
    out += ']';
    return out;
  }

  void emit(int root, std::string *out, std::vector<int> *atoms) {
    // digits are allocated when an opener prints and freed at its closer
    std::vector<int> digit_of(static_cast<size_t>(g_.bond_count()), -1);
    std::set<int> free_digits;
    for (int d = 1; d < 100; ++d) free_digits.insert(d);

    struct Task {
      int atom;
      int via_bond;  // bond from parent, -1 at root
      bool open_paren;
      bool close_paren;
    };
    std::vector<Task> stack{{root, -1, false, false}};
    while (!stack.empty()) {
      const Task t = stack.back();
      stack.pop_back();
      if (t.close_paren) {
        *out += ')';
        continue;
      }
      if (t.open_paren) *out += '(';
      if (t.via_bond >= 0) *out += bond_token(t.via_bond);
      *out += atom_token(t.atom);
      atoms->push_back(t.atom);
      // ring closures that end here, in the order their digits were opened
      auto &closes = ring_close_at_[static_cast<size_t>(t.atom)];
      std::sort(closes.begin(), closes.end(),
                [&](const RingMark &x, const RingMark &y) {
                  return digit_of[static_cast<size_t>(x.bond)] <
                         digit_of[static_cast<size_t>(y.bond)];
                });
      for (const RingMark &mark : closes) {
        const int d = digit_of[static_cast<size_t>(mark.bond)];
        *out += d < 10 ? std::to_string(d) : "%" + std::to_string(d);
        free_digits.insert(d);
      }
      for (const RingMark &mark : ring_open_at_[static_cast<size_t>(t.atom)]) {
        const int d = *free_digits.begin();
        free_digits.erase(free_digits.begin());
        digit_of[static_cast<size_t>(mark.bond)] = d;
        *out += bond_token(mark.bond);
        *out += d < 10 ? std::to_string(d) : "%" + std::to_string(d);
      }
      const auto &ch = children_[static_cast<size_t>(t.atom)];
      // all children but the last sit in parentheses; push in reverse
      for (int k = static_cast<int>(ch.size()) - 1; k >= 0; --k) {
        const int w = ch[static_cast<size_t>(k)];
        const int e = g_.find_bond(t.atom, w);
        const bool parens = k + 1 < static_cast<int>(ch.size());
        if (parens) stack.push_back({0, -1, false, true});
        stack.push_back({w, e, parens, false});
      }
    }
  }

  const MolecularGraph &g_;
  const std::vector<int> &rank_;
  std::vector<int> preorder_;
  std::vector<std::vector<int>> children_;
  std::vector<std::vector<RingMark>> ring_open_at_;
  std::vector<std::vector<RingMark>> ring_close_at_;
};

struct Candidate {
  std::string smiles;
  std::vector<int> output_position;
};

Candidate write_with(const MolecularGraph &g, const std::vector<int> &rank) {
  Writer w(g, rank);
  Candidate c;
  c.smiles = w.write(&c.output_position);
  return c;
}

// Resolves remaining rank ties by trying each member of the first ambiguous
// class and keeping the lexicographically smallest string. The budget caps
// the number of written candidates for pathologically symmetric inputs.
Candidate resolve(const MolecularGraph &g, const std::vector<int> &rank,
                  int &budget) {
  const std::vector<int> cls = ambiguous_class(g, rank);
  if (cls.empty()) return write_with(g, rank);
  Candidate best;
  bool have = false;
  for (const int a : cls) {
    Candidate c = resolve(g, distinguish(g, rank, a), budget);
    if (!have || c.smiles < best.smiles) {
      best = std::move(c);
      have = true;
    }
    if (--budget <= 0) break;
  }
  return best;
}

}  // namespace

CanonicalResult canonicalize(const MolecularGraph &mol) {
  if (mol.atom_count() == 0) return {"", {}};
  int budget = 4096;
  Candidate c = resolve(mol, refine(mol, initial_ranks(mol)), budget);
  return {std::move(c.smiles), std::move(c.output_position)};
}

std::string canonical_smiles(const MolecularGraph &mol) {
  return canonicalize(mol).smiles;
}

std::vector<int> canonical_atom_order(const MolecularGraph &mol) {
  const CanonicalResult r = canonicalize(mol);
  std::vector<int> order(r.output_position.size(), -1);
  for (int atom = 0; atom < static_cast<int>(r.output_position.size()); ++atom)
    order[static_cast<size_t>(r.output_position[static_cast<size_t>(atom)])] =
        atom;
  return order;
}

}  // namespace covgen::chem
