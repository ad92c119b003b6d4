#include <cmath>

#include <doctest.h>

#include "core/common.hpp"
#include "core/flexitrack.hpp"
#include "core/params.hpp"
#include "core/rng.hpp"
#include "oracles.hpp"

using namespace omni;

namespace {

Vec unit_axis(int dim, int axis) {
  Vec v(dim, 0.0);
  v[axis] = 1.0;
  return v;
}

MoeParams identity_moe(int dim) {
  MoeParams p;
  p.lambda = 0.5;
  p.top_k = 4;
  p.temperature = 1.0;
  p.activation = Activation::identity;
  for (int k = 0; k < 2; ++k) {
    p.experts.push_back({Mat::identity(dim), Vec(dim, 0.0), Mat::identity(dim), Vec(dim, 0.0)});
    p.keys.push_back(unit_axis(dim, k));
  }
  return p;
}

double dist(const Vec& a, const Vec& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += (a[i] - b[i]) * (a[i] - b[i]);
  return std::sqrt(s);
}

}  // namespace

TEST_CASE("box encoding is periodic across the seam and unit-bounded") {
  const int dims = 32;
  const Vec near_one = encode_box(PanoBox::make(0.9995, 0.5, 0.1, 0.2), dims);
  const Vec near_zero = encode_box(PanoBox::make(0.0005, 0.5, 0.1, 0.2), dims);
  CHECK(dist(near_one, near_zero) < 0.05);
  const Vec mid = encode_box(PanoBox::make(0.5, 0.5, 0.1, 0.2), dims);
  CHECK(dist(near_one, mid) > 0.5);
  for (double v : near_one) CHECK(std::abs(v) <= 1.0);
}

TEST_CASE("make_instances: cardinality and identity passthrough") {
  const MoeParams moe = identity_moe(8);
  CHECK(make_instances({}, moe, 8, true).empty());

  MemoryBank bank;
  bank.capacity = 8;
  const Vec e = unit_axis(8, 2);
  bank = admit(bank, {e, 0.9, 1}, 0.7);
  InstanceSource src{42, e, &bank, PanoBox::make(0.3, 0.5, 0.1, 0.2), 0.8};
  const auto insts = make_instances({src}, moe, 8, true);
  REQUIRE(insts.size() == 1);
  CHECK(insts[0].track_id == 42);
  CHECK(insts[0].score == 0.8);
  // Single-slot memory equal to the query: enhancement is a fixed point.
  for (int i = 0; i < 8; ++i) CHECK(insts[0].feature[i] == doctest::Approx(e[i]).epsilon(1e-12));
  CHECK(insts[0].anchor_box.cu == doctest::Approx(0.3));
  CHECK(insts[0].anchor_enc.size() == 8);

  std::vector<InstanceSource> five;
  for (int i = 0; i < 5; ++i) {
    InstanceSource s{100 + i, unit_axis(8, i % 8), &bank, PanoBox::make(0.1 * i + 0.05, 0.5, 0.08, 0.2),
                     0.5 + 0.05 * i};
    five.push_back(s);
  }
  const auto many = make_instances(five, moe, 8, true);
  REQUIRE(many.size() == 5);
  for (int i = 0; i < 5; ++i)
    for (int j = i + 1; j < 5; ++j) CHECK(many[i].track_id != many[j].track_id);
}

TEST_CASE("perturb with zero sigma is an exact identity") {
  Rng rng(3);
  FlexiTrackInstance inst;
  inst.track_id = 1;
  inst.feature = {0.25, -1.5, 3.0};
  inst.anchor_box = PanoBox::make(0.77, 0.4, 0.1, 0.2);
  inst.anchor_enc = encode_box(inst.anchor_box, 16);
  inst.score = 0.9;
  const FlexiTrackInstance out = perturb(inst, 0.0, 0.0, rng);
  CHECK(out.feature == inst.feature);
  CHECK(out.anchor_enc == inst.anchor_enc);
  CHECK(out.anchor_box.cu == inst.anchor_box.cu);
}

TEST_CASE("perturb is reproducible for a fixed seed") {
  FlexiTrackInstance inst;
  inst.feature = Vec(8, 0.5);
  inst.anchor_box = PanoBox::make(0.2, 0.5, 0.1, 0.2);
  inst.anchor_enc = encode_box(inst.anchor_box, 8);

  Rng r1(77), r2(77);
  const FlexiTrackInstance a = perturb(inst, 0.1, 0.05, r1);
  const FlexiTrackInstance b = perturb(inst, 0.1, 0.05, r2);
  CHECK(a.feature == b.feature);
  CHECK(a.anchor_box.cu == b.anchor_box.cu);
  CHECK(a.anchor_enc == b.anchor_enc);
}

TEST_CASE("perturbation noise matches its nominal scale") {
  FlexiTrackInstance inst;
  inst.feature = Vec(4, 0.0);
  inst.anchor_box = PanoBox::make(0.5, 0.5, 0.2, 0.2);
  inst.anchor_enc = encode_box(inst.anchor_box, 8);
  Rng rng(11);
  double sq = 0.0;
  long long n = 0;
  for (int i = 0; i < 2500; ++i) {
    const FlexiTrackInstance out = perturb(inst, 0.1, 0.0, rng);
    for (double v : out.feature) {
      sq += v * v;
      ++n;
    }
  }
  const double std_hat = std::sqrt(sq / n);
  CHECK(std_hat == doctest::Approx(0.1).epsilon(0.05));
}

TEST_CASE("claiming with no instances leaves every detection unclaimed") {
  std::vector<Detection> dets(3);
  for (int i = 0; i < 3; ++i)
    dets[i] = {PanoBox::make(0.2 * i + 0.1, 0.5, 0.08, 0.2), 0.8, unit_axis(4, i)};
  const ClaimedDetections c = claim_detections({}, dets, 0.5);
  CHECK(c.claimed.empty());
  CHECK(c.unclaimed == std::vector<int>{0, 1, 2});
}

TEST_CASE("an exactly matching detection is claimed with similarity 1") {
  FlexiTrackInstance inst;
  inst.track_id = 9;
  inst.feature = unit_axis(4, 1);
  inst.anchor_box = PanoBox::make(0.4, 0.5, 0.1, 0.2);
  inst.anchor_enc = encode_box(inst.anchor_box, 8);
  const Detection d{inst.anchor_box, 0.9, unit_axis(4, 1)};
  const ClaimedDetections c = claim_detections({inst}, {d}, 0.5);
  REQUIRE(c.claimed.size() == 1);
  CHECK(c.claimed[0].track_id == 9);
  CHECK(c.claimed[0].similarity == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(c.claimed[0].score == doctest::Approx(0.9).epsilon(1e-12));
  CHECK(c.unclaimed.empty());
}

TEST_CASE("claiming equals the exhaustive assignment oracle") {
  Rng rng(31);
  for (int rep = 0; rep < 100; ++rep) {
    const int ni = 3, nd = 5;
    std::vector<FlexiTrackInstance> insts(ni);
    for (int i = 0; i < ni; ++i) {
      insts[i].track_id = i + 1;
      insts[i].feature.resize(6);
      for (double& v : insts[i].feature) v = rng.normal();
      insts[i].anchor_box = oracle::random_box(rng, rep % 2 == 0);
      insts[i].anchor_enc = encode_box(insts[i].anchor_box, 8);
      insts[i].score = rng.uniform(0.5, 1.0);
    }
    std::vector<Detection> dets(nd);
    for (int j = 0; j < nd; ++j) {
      dets[j].box = oracle::random_box(rng, rep % 2 == 1);
      dets[j].score = rng.uniform(0.3, 1.0);
      dets[j].embedding.resize(6);
      for (double& v : dets[j].embedding) v = rng.normal();
    }
    const double gate = 0.3;
    const ClaimedDetections got = claim_detections(insts, dets, gate);

    // Oracle: cost table recomputed from the definition, then exhaustive
    // enumeration of all one-to-one assignments of the 3 instances; an
    // instance with no admissible detection may stay unassigned at the same
    // penalty the solver pays for a forbidden cell.
    Mat cost(ni, nd);
    std::vector<std::vector<char>> bad(ni, std::vector<char>(nd, 0));
    for (int i = 0; i < ni; ++i)
      for (int j = 0; j < nd; ++j) {
        const double iou = cyclic_iou(insts[i].anchor_box, dets[j].box);
        const double cs = cosine(insts[i].feature, dets[j].embedding);
        cost(i, j) = 0.6 * (1 - iou) + 0.4 * (1 - cs) / 2.0;
        bad[i][j] = (iou == 0.0 && cs < 0.3);
      }
    double best = std::numeric_limits<double>::infinity();
    std::vector<std::pair<int, int>> best_pairs;
    std::vector<int> pick(ni, -1);
    auto rec = [&](auto&& self, int depth, double acc) -> void {
      if (depth == ni) {
        if (acc < best) {
          best = acc;
          best_pairs.clear();
          for (int i = 0; i < ni; ++i)
            if (pick[i] >= 0) best_pairs.emplace_back(i, pick[i]);
        }
        return;
      }
      for (int j = -1; j < nd; ++j) {
        if (j >= 0) {
          if (bad[depth][j]) continue;
          bool used = false;
          for (int q = 0; q < depth; ++q) used |= (pick[q] == j);
          if (used) continue;
        }
        pick[depth] = j;
        self(self, depth + 1, acc + (j >= 0 ? cost(depth, j) : 1e9));
      }
      pick[depth] = -1;
    };
    rec(rec, 0, 0.0);
    std::vector<ClaimedDetections::Claim> expect;
    for (const auto& [i, j] : best_pairs) {
      const double sim = 1.0 - cost(i, j);
      if (sim >= gate) expect.push_back({insts[i].track_id, j, dets[j].score * sim, sim});
    }
    REQUIRE(got.claimed.size() == expect.size());
    for (std::size_t k = 0; k < expect.size(); ++k) {
      CHECK(got.claimed[k].track_id == expect[k].track_id);
      CHECK(got.claimed[k].det_index == expect[k].det_index);
      CHECK(got.claimed[k].score == doctest::Approx(expect[k].score).epsilon(1e-9));
    }
    // Partition property.
    CHECK(got.claimed.size() + got.unclaimed.size() == static_cast<std::size_t>(nd));
  }
}
