//
// Project covgen - Copyright 2026 covgen developers.
// SPDX-License-Identifier: Apache-2.0
//

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <set>
#include <string>
#include <vector>

#include "covgen/chem/canonical.hpp"
#include "covgen/chem/corpus.hpp"
#include "covgen/chem/fingerprint.hpp"
#include "covgen/chem/molecule.hpp"
#include "covgen/chem/smiles.hpp"
#include "covgen/chem/substructure.hpp"
#include "covgen/util/rng.hpp"

using namespace covgen;
using namespace covgen::chem;

namespace {

// Mixed bag: rings, fused systems, heteroaromatics, charges, salts,
// hypervalent S/N/P, warhead motifs, stereo annotations.
const std::vector<std::string> kPanel = {
    "C",
    "CC",
    "CCO",
    "OCC",
    "CC(=O)O",
    "CC(C)O",
    "CC#N",
    "C=C",
    "C#C",
    "C=C=C",
    "CC=C=CC",
    "CCCl",
    "CC(Br)CC",
    "FC(F)F",
    "CCI",
    "N",
    "O",
    "Cl",
    "C1CCCCC1",
    "C1CCC1",
    "C1CC1",
    "c1ccccc1",
    "Cc1ccccc1",
    "c1ccncc1",
    "c1cc[nH]c1",
    "c1ccoc1",
    "c1ccsc1",
    "c1cnco1",
    "c1cc[nH]n1",
    "c1cncnc1",
    "c1ccc2ccccc2c1",
    "c1ccc2c(c1)cccn2",
    "c1ccc2c(c1)cc[nH]2",
    "O=c1ccocc1",
    "c1ccc(-c2ccccc2)cc1",
    "c1ccc(c2ccccc2)cc1",
    "CS(=O)C",
    "CS(=O)(=O)N",
    "O=[N+]([O-])c1ccccc1",
    "O=N(=O)c1ccccc1",
    "OP(=O)(O)OC",
    "CC(=O)[O-].[Na+]",
    "C[NH3+].[Cl-]",
    "C[N+](C)(C)C",
    "C[C@H](N)C(=O)O",
    "CC(N)C(=O)O",
    "C=CC(=O)N",
    "C=CC(=O)Nc1ccccc1",
    "O=C1CS(=O)(=O)N1",
    "C=C1COC1=O",
    "C1CCC2(CC1)CCCC2",
    "C1CC2CCC1CC2",
    "C1CCCCCCCCCCCCCCC1",
    "CC(=O)Oc1ccccc1C(=O)O",
    "Cn1cnc2c1c(=O)n(C)c(=O)n2C",
    "CCN(CC)CCNC(=O)c1ccc(N)cc1",
    "CC(C)Cc1ccc(cc1)C(C)C(=O)O",
    "c1ccc(cc1)C(=O)NCCS",
    "NC(=O)c1cnccn1",
};

MolecularGraph parse(const std::string &s) { return parse_smiles(s); }

std::vector<int> random_permutation(int n, util::Rng &rng) {
  std::vector<int> p(static_cast<size_t>(n));
  std::iota(p.begin(), p.end(), 0);
  rng.shuffle(p);
  return p;
}

int total_h(const MolecularGraph &g) {
  int h = 0;
  for (int i = 0; i < g.atom_count(); ++i) h += g.hydrogen_count(i);
  return h;
}

// Exhaustive reference for substructure matching: every injective assignment
// of query atoms to target atoms, constraints checked at the leaf only.
void brute_enumerate(const MolecularGraph &q, const MolecularGraph &t,
                     std::vector<int> &mapping, std::vector<char> &used,
                     size_t depth, std::vector<std::vector<int>> &out) {
  const int nq = q.atom_count();
  if (depth == static_cast<size_t>(nq)) {
    for (int i = 0; i < nq; ++i) {
      const Atom &qa = q.atom(i);
      const Atom &ta = t.atom(mapping[static_cast<size_t>(i)]);
      if (qa.atomic_number != ta.atomic_number || qa.aromatic != ta.aromatic)
        return;
    }
    for (int e = 0; e < q.bond_count(); ++e) {
      const Bond &qb = q.bond(e);
      const int te = t.find_bond(mapping[static_cast<size_t>(qb.a)],
                                 mapping[static_cast<size_t>(qb.b)]);
      if (te < 0 || t.bond(te).order != qb.order) return;
    }
    out.push_back(mapping);
    return;
  }
  for (int ta = 0; ta < t.atom_count(); ++ta) {
    if (used[static_cast<size_t>(ta)]) continue;
    mapping[depth] = ta;
    used[static_cast<size_t>(ta)] = 1;
    brute_enumerate(q, t, mapping, used, depth + 1, out);
    used[static_cast<size_t>(ta)] = 0;
  }
}

std::vector<std::vector<int>> brute_matches(const MolecularGraph &q,
                                            const MolecularGraph &t) {
  std::vector<std::vector<int>> out;
  if (q.atom_count() > t.atom_count()) return out;
  std::vector<int> mapping(static_cast<size_t>(q.atom_count()), -1);
  std::vector<char> used(static_cast<size_t>(t.atom_count()), 0);
  brute_enumerate(q, t, mapping, used, 0, out);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

TEST_CASE("methane parses to one heavy atom with four hydrogens") {
  const MolecularGraph g = parse("C");
  CHECK(g.atom_count() == 1);
  CHECK(g.bond_count() == 0);
  CHECK(g.hydrogen_count(0) == 4);
}

TEST_CASE("benzene parses to six aromatic atoms and bonds") {
  const MolecularGraph g = parse("c1ccccc1");
  CHECK(g.atom_count() == 6);
  CHECK(g.bond_count() == 6);
  for (int i = 0; i < 6; ++i) {
    CHECK(g.atom(i).aromatic);
    CHECK(g.atom(i).in_ring);
    CHECK(g.hydrogen_count(i) == 1);
  }
  int doubles = 0;
  for (int e = 0; e < 6; ++e) {
    CHECK(g.bond(e).order == BondOrder::Aromatic);
    if (g.kekule_order(e) == BondOrder::Double) ++doubles;
  }
  CHECK(doubles == 3);
  for (int i = 0; i < 6; ++i) CHECK(g.bond_order_sum(i) == 3);
}

TEST_CASE("allene parses to three atoms with two double bonds") {
  const MolecularGraph g = parse("C=C=C");
  CHECK(g.atom_count() == 3);
  REQUIRE(g.bond_count() == 2);
  CHECK(g.bond(0).order == BondOrder::Double);
  CHECK(g.bond(1).order == BondOrder::Double);
  CHECK(g.hydrogen_count(0) == 2);
  CHECK(g.hydrogen_count(1) == 0);
  CHECK(g.hydrogen_count(2) == 2);
}

TEST_CASE("hydrogen resolution across common functional groups") {
  CHECK(total_h(parse("CC")) == 6);
  CHECK(total_h(parse("C=C")) == 4);
  CHECK(total_h(parse("C#C")) == 2);
  CHECK(total_h(parse("N")) == 3);
  CHECK(total_h(parse("O")) == 2);
  CHECK(total_h(parse("Cl")) == 1);
  CHECK(total_h(parse("c1cc[nH]c1")) == 5);
  CHECK(total_h(parse("c1ccncc1")) == 5);
  const MolecularGraph ammonium = parse("[NH4+]");
  CHECK(ammonium.hydrogen_count(0) == 4);
  CHECK(ammonium.atom(0).formal_charge == 1);
  const MolecularGraph carboxylate = parse("CC(=O)[O-]");
  CHECK(carboxylate.atom(3).formal_charge == -1);
  CHECK(carboxylate.hydrogen_count(3) == 0);
}

TEST_CASE("distinct parse error kinds") {
  auto kind_of = [](const std::string &s) {
    try {
      parse_smiles(s);
    } catch (const SmilesError &err) {
      return err.kind();
    }
    return SmilesErrorKind::EmptyInput;  // sentinel for "no error"
  };
  CHECK(kind_of("C((") == SmilesErrorKind::UnbalancedParenthesis);
  CHECK(kind_of("C)") == SmilesErrorKind::UnbalancedParenthesis);
  CHECK(kind_of("(C)C") == SmilesErrorKind::UnbalancedParenthesis);
  CHECK(kind_of("C1CC") == SmilesErrorKind::UnclosedRingBond);
  CHECK(kind_of("") == SmilesErrorKind::EmptyInput);
  CHECK(kind_of("   ") == SmilesErrorKind::EmptyInput);
  CHECK(kind_of("Cx") == SmilesErrorKind::UnknownSymbol);
  CHECK(kind_of("[Xx]") == SmilesErrorKind::UnknownSymbol);
  CHECK(kind_of("C==C") == SmilesErrorKind::BadSyntax);
  CHECK(kind_of("C=") == SmilesErrorKind::BadSyntax);
  CHECK(kind_of("C()C") == SmilesErrorKind::BadSyntax);
  CHECK(kind_of("C(C)(C)(C)(C)C") == SmilesErrorKind::ValenceViolation);
  CHECK(kind_of("[CH5]") == SmilesErrorKind::ValenceViolation);
  CHECK(kind_of("CcC") == SmilesErrorKind::AromaticityError);
  CHECK(kind_of("c1ccc1") == SmilesErrorKind::AromaticityError);
  CHECK(kind_of("c1ccnc1") == SmilesErrorKind::AromaticityError);
  CHECK(kind_of("C11") == SmilesErrorKind::BadSyntax);
  CHECK(kind_of("C=1CC-1") == SmilesErrorKind::BadSyntax);
}

TEST_CASE("validity check wraps the parser") {
  CHECK(smiles_valid("CCO"));
  CHECK_FALSE(smiles_valid(""));
  CHECK_FALSE(smiles_valid("C(("));
  CHECK(smiles_valid("O=c1ccocc1"));
  CHECK_FALSE(smiles_valid("[H]"));
}

TEST_CASE("aromatic perception accepts heteroaromatics and rejects impostors") {
  CHECK(smiles_valid("c1cc[nH]c1"));
  CHECK(smiles_valid("c1ccoc1"));
  CHECK(smiles_valid("c1ccsc1"));
  CHECK(smiles_valid("c1cncnc1"));
  CHECK(smiles_valid("c1ccc2ccccc2c1"));
  // pyrrole nitrogen needs its bracket H
  CHECK_FALSE(smiles_valid("c1ccnc1"));
  // cyclobutadiene: kekulizable but 4 pi electrons
  CHECK_FALSE(smiles_valid("c1ccc1"));
  // aromatic atom outside a ring
  CHECK_FALSE(smiles_valid("cc"));
}

TEST_CASE("multi-component inputs") {
  const MolecularGraph g = parse("CC(=O)[O-].[Na+]");
  CHECK(g.component_count() == 2);
  CHECK(g.atom_count() == 5);
  const MolecularGraph salt = parse("C[NH3+].[Cl-]");
  CHECK(salt.component_count() == 2);
}

TEST_CASE("ring perception marks rings and counts them") {
  const MolecularGraph benzene = parse("c1ccccc1");
  CHECK(benzene.rings().size() == 1);
  CHECK(benzene.rings()[0].size() == 6);
  const MolecularGraph naphthalene = parse("c1ccc2ccccc2c1");
  CHECK(naphthalene.rings().size() == 2);
  const MolecularGraph spiro = parse("C1CCC2(CC1)CCCC2");
  CHECK(spiro.rings().size() == 2);
  const MolecularGraph chain = parse("CCCC");
  CHECK(chain.rings().empty());
  for (const Atom &a : chain.atoms()) CHECK_FALSE(a.in_ring);
}

TEST_CASE("canonical smiles identifies relabelings") {
  CHECK(canonical_smiles(parse("OCC")) == canonical_smiles(parse("CCO")));
  CHECK(canonical_smiles(parse("c1ccc(-c2ccccc2)cc1")) ==
        canonical_smiles(parse("c1ccc(c2ccccc2)cc1")));
  CHECK(canonical_smiles(parse("C[C@H](N)C(=O)O")) ==
        canonical_smiles(parse("CC(N)C(=O)O")));
}

TEST_CASE("canonicalization is idempotent over the panel") {
  for (const std::string &s : kPanel) {
    CAPTURE(s);
    const std::string c1 = canonical_smiles(parse(s));
    const std::string c2 = canonical_smiles(parse(c1));
    CHECK(c1 == c2);
  }
}

TEST_CASE("canonical string and fingerprint are permutation invariant") {
  util::Rng rng(20260816);
  for (const std::string &s : kPanel) {
    CAPTURE(s);
    const MolecularGraph g = parse(s);
    const std::string base = canonical_smiles(g);
    const Fingerprint fp = morgan_fingerprint(g);
    for (int trial = 0; trial < 20; ++trial) {
      const MolecularGraph h = g.permuted(random_permutation(g.atom_count(), rng));
      CHECK(canonical_smiles(h) == base);
      CHECK(morgan_fingerprint(h) == fp);
    }
  }
}

TEST_CASE("benzene permutations give one unique canonical string") {
  util::Rng rng(7);
  const MolecularGraph g = parse("c1ccccc1");
  std::set<std::string> unique;
  for (int trial = 0; trial < 50; ++trial)
    unique.insert(canonical_smiles(g.permuted(random_permutation(6, rng))));
  CHECK(unique.size() == 1);
}

TEST_CASE("round-trip preserves graph identity over the panel") {
  for (const std::string &s : kPanel) {
    CAPTURE(s);
    const MolecularGraph g = parse(s);
    const std::string c = canonical_smiles(g);
    const MolecularGraph h = parse(c);
    CHECK(canonical_smiles(h) == c);
    CHECK(h.atom_count() == g.atom_count());
    CHECK(h.bond_count() == g.bond_count());
    CHECK(total_h(h) == total_h(g));
  }
}

TEST_CASE("fingerprint basics") {
  const Fingerprint methane = morgan_fingerprint(parse("C"));
  CHECK(methane.popcount() >= 1);
  CHECK(methane.popcount() <= 3);
  CHECK(morgan_fingerprint(parse("c1ccccc1")) !=
        morgan_fingerprint(parse("C1CCCCC1")));
  const Fingerprint empty_free = morgan_fingerprint(parse("CCO"));
  CHECK(empty_free.popcount() >= 1);
}

TEST_CASE("tanimoto identities and brute-force agreement") {
  const Fingerprint a = morgan_fingerprint(parse("CC(=O)Oc1ccccc1C(=O)O"));
  const Fingerprint b = morgan_fingerprint(parse("CCO"));
  CHECK(tanimoto(a, a) == doctest::Approx(1.0));
  CHECK(tanimoto(a, b) == tanimoto(b, a));
  CHECK(tanimoto(a, b) >= 0.0);
  CHECK(tanimoto(a, b) <= 1.0);

  Fingerprint zero;
  CHECK(tanimoto(zero, zero) == 0.0);

  util::Rng rng(99);
  for (int trial = 0; trial < 20; ++trial) {
    Fingerprint x, y;
    for (int k = 0; k < 64; ++k) {
      x.set(static_cast<int>(rng.below(Fingerprint::kBits)));
      y.set(static_cast<int>(rng.below(Fingerprint::kBits)));
    }
    int inter = 0, uni = 0;
    for (int bit = 0; bit < Fingerprint::kBits; ++bit) {
      const bool xb = x.test(bit);
      const bool yb = y.test(bit);
      inter += xb && yb;
      uni += xb || yb;
    }
    const double expected = uni == 0 ? 0.0 : double(inter) / uni;
    CHECK(tanimoto(x, y) == doctest::Approx(expected));
  }
}

TEST_CASE("substructure search finds and rejects the right embeddings") {
  const MolecularGraph allene = parse("C=C=C");
  const MolecularGraph pentadiene = parse("CC=C=CC");
  CHECK(has_substructure(allene, pentadiene));
  CHECK_FALSE(substructure_matches(allene, pentadiene).empty());

  const MolecularGraph cyclohexane = parse("C1CCCCC1");
  const MolecularGraph benzene = parse("c1ccccc1");
  CHECK_FALSE(has_substructure(cyclohexane, benzene));
  CHECK_FALSE(has_substructure(benzene, cyclohexane));

  // charge is not part of the match
  const MolecularGraph amine = parse("CN");
  CHECK(has_substructure(amine, parse("C[NH3+].[Cl-]")));
}

TEST_CASE("substructure matching equals the exhaustive oracle") {
  const std::vector<std::string> queries = {"C",  "CC",  "C=C", "C=O",
                                            "CN", "CCO", "C=C=C"};
  int pairs = 0;
  for (const std::string &ts : kPanel) {
    const MolecularGraph target = parse(ts);
    if (target.atom_count() > 10) continue;
    for (const std::string &qs : queries) {
      const MolecularGraph query = parse(qs);
      auto got = substructure_matches(query, target);
      std::sort(got.begin(), got.end());
      const auto expected = brute_matches(query, target);
      CAPTURE(qs);
      CAPTURE(ts);
      CHECK(got == expected);
      ++pairs;
    }
  }
  CHECK(pairs > 50);
}

TEST_CASE("canonical atom order is a permutation aligned with the output") {
  const MolecularGraph g = parse("CC(=O)Oc1ccccc1C(=O)O");
  const CanonicalResult r = canonicalize(g);
  std::vector<int> seen(r.output_position.size(), 0);
  for (const int pos : r.output_position) {
    REQUIRE(pos >= 0);
    REQUIRE(pos < static_cast<int>(seen.size()));
    seen[static_cast<size_t>(pos)] += 1;
  }
  for (const int count : seen) CHECK(count == 1);
  const std::vector<int> order = canonical_atom_order(g);
  for (int pos = 0; pos < static_cast<int>(order.size()); ++pos)
    CHECK(r.output_position[static_cast<size_t>(order[static_cast<size_t>(pos)])] == pos);
}

TEST_CASE("corpus files read ids and labels") {
  const std::string path = "test_corpus_tmp.smi";
  {
    FILE *f = fopen(path.c_str(), "w");
    REQUIRE(f);
    fputs("# comment line\n", f);
    fputs("CCO\tmol-a\t0.5\n", f);
    fputs("\n", f);
    fputs("c1ccccc1\n", f);
    fputs("CC(=O)O\tmol-c\n", f);
    fclose(f);
  }
  const auto records = read_corpus(path);
  REQUIRE(records.size() == 3);
  CHECK(records[0].id == "mol-a");
  CHECK(records[0].label.has_value());
  CHECK(*records[0].label == doctest::Approx(0.5));
  CHECK(records[1].id == "m2");
  CHECK_FALSE(records[1].label.has_value());
  CHECK(records[2].id == "mol-c");
  std::remove(path.c_str());
}
