//
// Project covgen - Copyright 2026 covgen developers.
// SPDX-License-Identifier: Apache-2.0
//

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <numbers>
#include <set>
#include <string>
#include <vector>

#include "covgen/chem/canonical.hpp"
#include "covgen/chem/smiles.hpp"
#include "covgen/chem/substructure.hpp"
#include "covgen/eval/evalkit.hpp"
#include "covgen/util/io.hpp"
#include "covgen/util/rng.hpp"

using namespace covgen;
using namespace covgen::eval;

namespace {

std::string temp_path(const std::string &name) {
  return (std::filesystem::temp_directory_path() / name).string();
}

MoleculeRecord make_record(std::string key, bool valid, bool desirable) {
  MoleculeRecord r;
  r.smiles = key;
  r.canonical = valid ? key : "";
  r.scores.molecule_id = std::move(key);
  r.scores.valid = valid;
  r.desirable = desirable;
  return r;
}

// A run of `desirable` synthetic desirable records where the first `found`
// keys also sit in the returned reference set, padded with invalid rows.
struct RediscoveryFixture {
  GenerationRun run;
  std::set<std::string> reference;
};

RediscoveryFixture rediscovery_fixture(int desirable, int found, int invalid) {
  RediscoveryFixture fx;
  std::vector<MoleculeRecord> records;
  for (int i = 0; i < desirable; ++i) {
    std::string key = "mol-" + std::to_string(i);
    if (i < found) fx.reference.insert(key);
    records.push_back(make_record(std::move(key), true, true));
  }
  for (int i = 0; i < invalid; ++i)
    records.push_back(make_record("bad-" + std::to_string(i), false, false));
  fx.reference.insert("never-generated");
  fx.run = make_run("run", "preset", std::move(records));
  return fx;
}

}  // namespace

TEST_CASE("run counts derive from records and keep their ordering") {
  std::vector<MoleculeRecord> records;
  records.push_back(make_record("a", true, true));
  records.push_back(make_record("b", true, false));
  records.push_back(make_record("c", false, false));
  const GenerationRun run = make_run("r1", "egfr-1", std::move(records));
  CHECK(run.generated == 3);
  CHECK(run.valid == 2);
  CHECK(run.desirable == 1);
  CHECK(run.desirable <= run.valid);
  CHECK(run.valid <= run.generated);

  // A desirable record must be a valid one.
  std::vector<MoleculeRecord> broken;
  broken.push_back(make_record("x", false, true));
  CHECK_THROWS_AS(make_run("r2", "egfr-1", std::move(broken)),
                  std::invalid_argument);
}

TEST_CASE("rediscovery rate matches hand-checked campaigns") {
  // 24 known actives out of 4793 desirable structures is half a percent.
  const auto big = rediscovery_fixture(4793, 24, 37);
  const Rediscovery r1 = rediscovery_rate(big.run, big.reference);
  CHECK(r1.count == 24);
  CHECK(r1.applicable);
  CHECK(r1.rate == doctest::Approx(100.0 * 24.0 / 4793.0).epsilon(1e-12));
  CHECK(std::round(r1.rate * 100.0) / 100.0 == doctest::Approx(0.50));

  // 78 of 800 is exactly 9.75 percent.
  const auto mid = rediscovery_fixture(800, 78, 0);
  const Rediscovery r2 = rediscovery_rate(mid.run, mid.reference);
  CHECK(r2.count == 78);
  CHECK(r2.rate == doctest::Approx(9.75).epsilon(1e-12));
}

TEST_CASE("rediscovery counts distinct keys once") {
  std::vector<MoleculeRecord> records;
  records.push_back(make_record("hit", true, true));
  records.push_back(make_record("hit", true, true));  // same structure again
  records.push_back(make_record("miss", true, true));
  const GenerationRun run = make_run("r", "p", std::move(records));
  const Rediscovery r = rediscovery_rate(run, {"hit"});
  CHECK(r.count == 1);
  // The denominator stays the raw desirable count, duplicates included.
  CHECK(r.rate == doctest::Approx(100.0 / 3.0));
}

TEST_CASE("rediscovery on a run with no desirable structures is marked") {
  std::vector<MoleculeRecord> records;
  records.push_back(make_record("a", true, false));
  records.push_back(make_record("b", false, false));
  const GenerationRun run = make_run("r", "p", std::move(records));
  const Rediscovery r = rediscovery_rate(run, {"a"});
  CHECK_FALSE(r.applicable);
  CHECK(r.count == 0);
  CHECK(r.rate == 0.0);
}

TEST_CASE("undesirable records never count as rediscoveries") {
  std::vector<MoleculeRecord> records;
  records.push_back(make_record("known", true, false));
  const GenerationRun run = make_run("r", "p", std::move(records));
  const Rediscovery r = rediscovery_rate(run, {"known"});
  CHECK(r.count == 0);
  CHECK_FALSE(r.applicable);
}

TEST_CASE("volume sweep rows are nested prefixes of the run") {
  // Interleave desirable hits, desirable misses and invalid rows, then
  // check every row against a brute-force recount of its prefix.
  util::Rng rng(2026);
  std::vector<MoleculeRecord> records;
  std::set<std::string> reference;
  for (int i = 0; i < 240; ++i) {
    const double rolled = rng.uniform();
    std::string key = "m" + std::to_string(i);
    if (rolled < 0.15) {
      records.push_back(make_record(key, false, false));
    } else if (rolled < 0.45) {
      records.push_back(make_record(key, true, false));
    } else {
      if (rolled > 0.8) reference.insert(key);
      records.push_back(make_record(key, true, true));
    }
  }
  const GenerationRun run = make_run("sweep", "p", records);
  const std::vector<int> scales{10, 40, 120, 240};
  const auto rows = volume_sweep(run, scales, reference);
  REQUIRE(rows.size() == scales.size());

  int prev_rediscovered = 0;
  for (size_t k = 0; k < rows.size(); ++k) {
    const SweepRow &row = rows[k];
    CHECK(row.scale == scales[k]);
    CHECK(row.generated == scales[k]);

    int valid = 0;
    int desirable = 0;
    std::set<std::string> found;
    for (int i = 0; i < scales[k]; ++i) {
      const auto &r = records[static_cast<size_t>(i)];
      if (r.scores.valid) ++valid;
      if (r.desirable) {
        ++desirable;
        if (reference.count(r.canonical)) found.insert(r.canonical);
      }
    }
    CHECK(row.valid == valid);
    CHECK(row.desirable == desirable);
    CHECK(row.rediscovered == static_cast<int>(found.size()));
    CHECK(row.desirable <= row.valid);
    CHECK(row.valid <= row.generated);

    // Absolute rediscoveries cannot drop when the prefix grows.
    CHECK(row.rediscovered >= prev_rediscovered);
    prev_rediscovered = row.rediscovered;

    // Rate column agrees with the counts in the same row.
    if (row.desirable > 0) {
      CHECK(row.rate_applicable);
      CHECK(row.rate ==
            doctest::Approx(100.0 * row.rediscovered / row.desirable));
    } else {
      CHECK_FALSE(row.rate_applicable);
      CHECK(row.rate == 0.0);
    }
  }
}

TEST_CASE("volume sweep accepts one scale and validates the axis") {
  const auto fx = rediscovery_fixture(10, 3, 2);
  const auto rows = volume_sweep(fx.run, {12}, fx.reference);
  REQUIRE(rows.size() == 1);
  CHECK(rows[0].generated == 12);
  CHECK(rows[0].rediscovered == 3);

  CHECK_THROWS_AS(volume_sweep(fx.run, {5, 5}, fx.reference),
                  std::invalid_argument);
  CHECK_THROWS_AS(volume_sweep(fx.run, {8, 6}, fx.reference),
                  std::invalid_argument);
  CHECK_THROWS_AS(volume_sweep(fx.run, {13}, fx.reference),
                  std::invalid_argument);
  CHECK_THROWS_AS(volume_sweep(fx.run, {-1, 4}, fx.reference),
                  std::invalid_argument);
}

namespace {

MoleculeRecord chem_record(const std::string &smiles, bool desirable) {
  MoleculeRecord r;
  r.smiles = smiles;
  r.canonical = chem::canonical_smiles(chem::parse_smiles(smiles));
  r.scores.molecule_id = smiles;
  r.scores.valid = true;
  r.desirable = desirable;
  return r;
}

}  // namespace

TEST_CASE("builtin motifs parse and recognise themselves") {
  const auto motifs = builtin_motifs();
  REQUIRE(motifs.size() == 3);
  CHECK(motifs[0].name == "allene");
  CHECK(motifs[1].name == "3-oxo-beta-sultam");
  CHECK(motifs[2].name == "alpha-methylene-beta-lactone");
  for (const auto &m : motifs) {
    CHECK(m.graph.atom_count() > 0);
    const auto self = chem::parse_smiles(m.smiles);
    CHECK(chem::has_substructure(m.graph, self));
  }
}

TEST_CASE("motif search agrees with brute-force matching") {
  std::vector<MoleculeRecord> records;
  const std::vector<std::string> corpus{
      "CC=C=CC",            // internal allene
      "C=C=C",              // bare allene
      "O=C1CS(=O)(=O)N1",   // the sultam itself
      "CC1(C)C(=O)N1",      // beta-lactam, not a sultam
      "C=C1COC1=O",         // the lactone itself
      "CCOC(=O)C",          // plain ester
      "c1ccccc1",           // benzene
      "CC(=O)NC1=CC=CC=C1", // acetanilide
      "CC1CS(=O)(=O)N1",    // sultam ring without the 3-oxo
      "O=C1CS(=O)(=O)N1C",  // N-methylated sultam
  };
  for (const auto &s : corpus) records.push_back(chem_record(s, true));
  const GenerationRun run = make_run("motifs", "p", records);
  const auto motifs = builtin_motifs();
  const auto hits = motif_search(run, motifs);
  REQUIRE(hits.size() == motifs.size());

  for (size_t m = 0; m < motifs.size(); ++m) {
    CHECK(hits[m].name == motifs[m].name);
    std::vector<int> expected;
    for (size_t i = 0; i < records.size(); ++i) {
      const auto mol = chem::parse_smiles(records[i].canonical);
      if (chem::has_substructure(motifs[m].graph, mol))
        expected.push_back(static_cast<int>(i));
    }
    CHECK(hits[m].record_indices == expected);
  }

  // Sanity anchors for the brute force itself.
  CHECK(hits[0].record_indices == std::vector<int>{0, 1});
  CHECK(std::count(hits[1].record_indices.begin(),
                   hits[1].record_indices.end(), 2) == 1);
  CHECK(std::count(hits[2].record_indices.begin(),
                   hits[2].record_indices.end(), 4) == 1);
}

TEST_CASE("motif search sees only desirable records") {
  std::vector<MoleculeRecord> records;
  records.push_back(chem_record("CCCC", true));
  records.push_back(chem_record("CC=C=CC", false));  // allene, filtered out
  records.push_back(chem_record("C=C=CC", true));    // the one planted hit
  const GenerationRun run = make_run("planted", "p", records);
  const auto hits = motif_search(run, builtin_motifs());
  CHECK(hits[0].record_indices == std::vector<int>{2});
  CHECK(hits[1].record_indices.empty());
  CHECK(hits[2].record_indices.empty());
}

TEST_CASE("sulfur-free corpus yields no sultam hits") {
  std::vector<MoleculeRecord> records;
  for (const std::string s :
       {"CCO", "CC(=O)OC", "c1ccncc1", "C1CCNC1", "CC(N)C(=O)O"})
    records.push_back(chem_record(s, true));
  const GenerationRun run = make_run("nos", "p", records);
  const auto hits = motif_search(run, builtin_motifs());
  CHECK(hits[1].record_indices.empty());
}

TEST_CASE("pose files round-trip through the text format") {
  const std::string text =
      "# docked pose\n"
      "lig-42 CYS797 1.5 -2.0 0.25\n"
      "\n"
      "0 0.0 0.0 0.0\n"
      "2 3.0 4.0 0.0\n"
      "1 -1.0 2.5 1.25\n";
  const PoseFile pose = parse_pose(text, "inline");
  CHECK(pose.molecule_id == "lig-42");
  CHECK(pose.residue_label == "CYS797");
  CHECK(pose.anchor[0] == doctest::Approx(1.5));
  CHECK(pose.anchor[1] == doctest::Approx(-2.0));
  CHECK(pose.anchor[2] == doctest::Approx(0.25));
  REQUIRE(pose.coords.size() == 3);
  // Rows may arrive out of order; indices place them.
  CHECK(pose.coords[1][0] == doctest::Approx(-1.0));
  CHECK(pose.coords[2][1] == doctest::Approx(4.0));

  const std::string path = temp_path("covgen_pose_test.txt");
  util::write_file_atomic(path, text);
  const PoseFile loaded = load_pose(path);
  CHECK(loaded.molecule_id == pose.molecule_id);
  CHECK(loaded.coords == pose.coords);
}

TEST_CASE("pose parser rejects malformed input") {
  const std::string head = "lig ALA1 0 0 0\n";
  CHECK_THROWS_AS(parse_pose("", "empty"), std::runtime_error);
  CHECK_THROWS_AS(parse_pose("lig ALA1 0 0\n", "short-header"),
                  std::runtime_error);
  CHECK_THROWS_AS(parse_pose("lig ALA1 0 0 0 9\n", "long-header"),
                  std::runtime_error);
  CHECK_THROWS_AS(parse_pose(head + "0 1 2\n", "short-row"),
                  std::runtime_error);
  CHECK_THROWS_AS(parse_pose(head + "0 1 2 3 4\n", "long-row"),
                  std::runtime_error);
  CHECK_THROWS_AS(parse_pose(head + "x 1 2 3\n", "bad-index"),
                  std::runtime_error);
  CHECK_THROWS_AS(parse_pose(head + "-1 1 2 3\n", "negative-index"),
                  std::runtime_error);
  CHECK_THROWS_AS(parse_pose(head + "0 1 2 3\n0 4 5 6\n", "dup-index"),
                  std::runtime_error);
  CHECK_THROWS_AS(parse_pose(head + "1 1 2 3\n", "gap-index"),
                  std::runtime_error);
  CHECK_THROWS_AS(parse_pose(head + "0 1 nan 3\n", "nan-coord"),
                  std::runtime_error);
  CHECK_THROWS_AS(parse_pose(head + "0 1 inf 3\n", "inf-coord"),
                  std::runtime_error);
  CHECK_THROWS_AS(parse_pose("lig ALA1 0 zero 0\n" , "bad-anchor"),
                  std::runtime_error);

  // Errors carry the origin so batch ingestion can point at the file.
  try {
    parse_pose(head + "0 1 2 3\n0 4 5 6\n", "poses/lig.txt");
    CHECK(false);
  } catch (const std::runtime_error &e) {
    CHECK(std::string(e.what()).find("poses/lig.txt") != std::string::npos);
  }
}

namespace {

PoseFile pose_for(const chem::MolecularGraph &mol,
                  std::array<double, 3> anchor,
                  std::vector<std::array<double, 3>> coords) {
  REQUIRE(coords.size() == static_cast<size_t>(mol.atom_count()));
  PoseFile pose;
  pose.molecule_id = "lig";
  pose.residue_label = "CYS797";
  pose.anchor = anchor;
  pose.coords = std::move(coords);
  return pose;
}

nn::AttributionMap tag_atoms(std::vector<int> tagged) {
  nn::AttributionMap attribution;
  attribution.tagged = std::move(tagged);
  return attribution;
}

}  // namespace

TEST_CASE("warhead distance follows hand geometry") {
  const auto mol = chem::parse_smiles("CCO");

  // Tagged atom sits on the anchor.
  auto pose = pose_for(mol, {1.0, 1.0, 1.0},
                       {{{1.0, 1.0, 1.0}, {5.0, 5.0, 5.0}, {9.0, 9.0, 9.0}}});
  CHECK(warhead_distance(mol, tag_atoms({0}), pose) == doctest::Approx(0.0));

  // A 3-4-5 right triangle from the origin.
  pose = pose_for(mol, {0.0, 0.0, 0.0},
                  {{{3.0, 4.0, 0.0}, {10.0, 0.0, 0.0}, {0.0, 12.0, 0.0}}});
  CHECK(warhead_distance(mol, tag_atoms({0}), pose) == doctest::Approx(5.0));

  // Two tagged atoms at 3.2 and 6.3: the near one wins.
  pose = pose_for(mol, {0.0, 0.0, 0.0},
                  {{{3.2, 0.0, 0.0}, {0.0, 6.3, 0.0}, {50.0, 0.0, 0.0}}});
  CHECK(warhead_distance(mol, tag_atoms({0, 1}), pose) ==
        doctest::Approx(3.2));
  CHECK(warhead_distance(mol, tag_atoms({1}), pose) == doctest::Approx(6.3));
}

TEST_CASE("warhead distance survives rigid motion") {
  const auto mol = chem::parse_smiles("NCC(=O)O");
  const std::vector<std::array<double, 3>> coords{{{0.0, 0.0, 0.0},
                                                   {1.5, 0.0, 0.0},
                                                   {2.2, 1.3, 0.0},
                                                   {1.6, 2.4, 0.3},
                                                   {3.5, 1.2, -0.4}}};
  const std::array<double, 3> anchor{4.0, -1.0, 2.0};
  const auto base = pose_for(mol, anchor, coords);
  const auto attribution = tag_atoms({0, 3});
  const double reference = warhead_distance(mol, attribution, base);

  util::Rng rng(77);
  for (int trial = 0; trial < 20; ++trial) {
    const double yaw = rng.uniform(0.0, 2.0 * std::numbers::pi);
    const double pitch = rng.uniform(-1.0, 1.0);
    const std::array<double, 3> shift{rng.uniform(-9.0, 9.0),
                                      rng.uniform(-9.0, 9.0),
                                      rng.uniform(-9.0, 9.0)};
    const auto rotate = [&](const std::array<double, 3> &p) {
      // Rotate about z by yaw, then about x by pitch, then translate.
      const double x1 = std::cos(yaw) * p[0] - std::sin(yaw) * p[1];
      const double y1 = std::sin(yaw) * p[0] + std::cos(yaw) * p[1];
      const double z1 = p[2];
      const double y2 = std::cos(pitch) * y1 - std::sin(pitch) * z1;
      const double z2 = std::sin(pitch) * y1 + std::cos(pitch) * z1;
      return std::array<double, 3>{x1 + shift[0], y2 + shift[1],
                                   z2 + shift[2]};
    };
    std::vector<std::array<double, 3>> moved;
    for (const auto &p : coords) moved.push_back(rotate(p));
    const auto pose = pose_for(mol, rotate(anchor), std::move(moved));
    CHECK(warhead_distance(mol, attribution, pose) ==
          doctest::Approx(reference).epsilon(1e-9));
  }
}

TEST_CASE("warhead distance validates its inputs") {
  const auto mol = chem::parse_smiles("CCO");
  const auto pose = pose_for(
      mol, {0.0, 0.0, 0.0},
      {{{1.0, 0.0, 0.0}, {2.0, 0.0, 0.0}, {3.0, 0.0, 0.0}}});
  CHECK_THROWS_AS(warhead_distance(mol, tag_atoms({}), pose),
                  std::invalid_argument);
  CHECK_THROWS_AS(warhead_distance(mol, tag_atoms({3}), pose),
                  std::invalid_argument);
  CHECK_THROWS_AS(warhead_distance(mol, tag_atoms({-1}), pose),
                  std::invalid_argument);

  PoseFile short_pose = pose;
  short_pose.coords.pop_back();
  CHECK_THROWS_AS(warhead_distance(mol, tag_atoms({0}), short_pose),
                  std::invalid_argument);
}

namespace {

// Synthetic fingerprint with a chosen set of bits.
chem::Fingerprint fp_with(const std::vector<int> &bits) {
  chem::Fingerprint fp;
  for (int b : bits) fp.set(b);
  return fp;
}

Eigen::MatrixXd centered_bits(const std::vector<chem::Fingerprint> &fps) {
  Eigen::MatrixXd x(static_cast<int>(fps.size()), chem::Fingerprint::kBits);
  for (int i = 0; i < x.rows(); ++i)
    for (int j = 0; j < x.cols(); ++j)
      x(i, j) = fps[static_cast<size_t>(i)].test(j) ? 1.0 : 0.0;
  x.rowwise() -= Eigen::RowVectorXd(x.colwise().mean());
  return x;
}

}  // namespace

TEST_CASE("projection maps duplicate fingerprints to identical points") {
  std::vector<chem::Fingerprint> fps;
  fps.push_back(fp_with({1, 5, 9, 200}));
  fps.push_back(fp_with({2, 6, 10, 300}));
  fps.push_back(fp_with({1, 5, 9, 200}));   // copy of row 0
  fps.push_back(fp_with({3, 7, 11, 400}));
  fps.push_back(fp_with({2, 6, 10, 300}));  // copy of row 1
  const auto proj = project_chemical_space(fps);
  REQUIRE(proj.points.size() == fps.size());
  for (int axis = 0; axis < 2; ++axis) {
    CHECK(proj.points[0][axis] == doctest::Approx(proj.points[2][axis]));
    CHECK(proj.points[1][axis] == doctest::Approx(proj.points[4][axis]));
  }

  // Components are unit length and mutually orthogonal.
  const Eigen::MatrixXd g = proj.components * proj.components.transpose();
  CHECK(g(0, 0) == doctest::Approx(1.0));
  CHECK(g(1, 1) == doctest::Approx(1.0));
  CHECK(std::abs(g(0, 1)) < 1e-8);
}

TEST_CASE("projection separates two bit-pattern clusters along the "
          "first axis") {
  util::Rng rng(404);
  std::vector<chem::Fingerprint> fps;
  std::vector<int> label;
  for (int i = 0; i < 16; ++i) {
    std::vector<int> bits;
    const bool second = i >= 8;
    // Shared cluster signature plus a little per-molecule noise.
    for (int b = 0; b < 24; ++b) bits.push_back(second ? 1000 + b : b);
    bits.push_back(1900 + static_cast<int>(rng.below(40)));
    fps.push_back(fp_with(bits));
    label.push_back(second ? 1 : 0);
  }
  const auto proj = project_chemical_space(fps);
  double lo0 = 1e300, hi0 = -1e300, lo1 = 1e300, hi1 = -1e300;
  for (size_t i = 0; i < fps.size(); ++i) {
    const double v = proj.points[i][0];
    if (label[i] == 1) {
      lo1 = std::min(lo1, v);
      hi1 = std::max(hi1, v);
    } else {
      lo0 = std::min(lo0, v);
      hi0 = std::max(hi0, v);
    }
  }
  // The clusters occupy disjoint intervals on the first coordinate
  // (orientation is free, so accept either side).
  CHECK((hi0 < lo1 || hi1 < lo0));
}

TEST_CASE("reconstruction error shrinks as components are added") {
  util::Rng rng(511);
  std::vector<chem::Fingerprint> fps;
  for (int i = 0; i < 20; ++i) {
    std::vector<int> bits;
    for (int b = 0; b < 60; ++b)
      if (rng.bernoulli(0.4)) bits.push_back(b + (i % 4) * 64);
    bits.push_back(1800 + i);
    fps.push_back(fp_with(bits));
  }
  const Eigen::MatrixXd x = centered_bits(fps);
  double prev = std::numeric_limits<double>::infinity();
  for (int k = 2; k <= 5; ++k) {
    const auto proj = project_chemical_space(fps, k);
    REQUIRE(proj.scores.cols() == k);
    REQUIRE(proj.components.rows() == k);
    const double err = (x - proj.scores * proj.components).norm();
    CHECK(err <= prev + 1e-9);
    prev = err;
  }
}

TEST_CASE("projection is invariant to input order up to sign") {
  util::Rng rng(2211);
  std::vector<chem::Fingerprint> fps;
  for (int i = 0; i < 12; ++i) {
    std::vector<int> bits;
    for (int b = 0; b < 2048; b += 64)
      if (rng.bernoulli(0.5)) bits.push_back(b + i);
    bits.push_back(i * 7);
    fps.push_back(fp_with(bits));
  }
  const auto base = project_chemical_space(fps);

  std::vector<size_t> perm(fps.size());
  for (size_t i = 0; i < perm.size(); ++i) perm[i] = i;
  std::vector<size_t> shuffled = perm;
  {
    std::vector<int> tmp(shuffled.begin(), shuffled.end());
    rng.shuffle(tmp);
    for (size_t i = 0; i < tmp.size(); ++i)
      shuffled[i] = static_cast<size_t>(tmp[i]);
  }
  std::vector<chem::Fingerprint> reordered;
  for (size_t i : shuffled) reordered.push_back(fps[i]);
  const auto again = project_chemical_space(reordered);

  for (int axis = 0; axis < 2; ++axis) {
    // Fix the sign per axis by the first entry with meaningful magnitude.
    double sign = 1.0;
    for (size_t i = 0; i < shuffled.size(); ++i) {
      const double a = base.points[shuffled[i]][axis];
      if (std::abs(a) > 1e-6) {
        sign = a * again.points[i][axis] >= 0.0 ? 1.0 : -1.0;
        break;
      }
    }
    for (size_t i = 0; i < shuffled.size(); ++i)
      CHECK(again.points[i][axis] * sign ==
            doctest::Approx(base.points[shuffled[i]][axis]).epsilon(1e-6));
  }
}

TEST_CASE("projection needs at least two fingerprints") {
  CHECK_THROWS_AS(project_chemical_space({}), std::invalid_argument);
  CHECK_THROWS_AS(project_chemical_space({fp_with({1, 2})}),
                  std::invalid_argument);
}

TEST_CASE("identical fingerprints collapse to one point") {
  std::vector<chem::Fingerprint> fps(4, fp_with({9, 99, 999}));
  const auto proj = project_chemical_space(fps);
  for (const auto &p : proj.points) {
    CHECK(p[0] == doctest::Approx(0.0));
    CHECK(p[1] == doctest::Approx(0.0));
  }
}
