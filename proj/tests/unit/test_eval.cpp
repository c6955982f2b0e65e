#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "clusart/error.hpp"
#include "clusart/eval.hpp"
#include "clusart/random.hpp"
#include "support.hpp"

using namespace clusart;
using namespace clusart::eval;

using Labels = std::vector<std::string>;

TEST_SUITE("eval") {

TEST_CASE("majority mapping") {
  const std::vector<std::size_t> cats{0, 0, 0, 1, 1};
  const Labels gold{"A", "A", "B", "B", "A"};
  const ClusterLabelMap m = map_clusters_majority(cats, gold);
  CHECK(m.labels.at(0) == "A");
  CHECK(m.labels.at(1) == "A");  // {B, A} tie goes to A
  CHECK(m.coverage == 1.0);
  CHECK(map_clusters_majority(std::vector<std::size_t>{}, Labels{}).labels.empty());
  CHECK_THROWS_AS(map_clusters_majority(cats, Labels{"A"}), DomainError);

  const ClusterLabelMap sparse = map_clusters_majority(std::vector<std::size_t>{4, 2}, Labels{"x", "y"});
  CHECK(sparse.labels.size() == 2);
  CHECK(sparse.labels.count(0) == 0);
}

TEST_CASE("f-measure values") {
  CHECK(f_measure(0.5, 0.5) == doctest::Approx(0.5));
  CHECK(f_measure(0.0, 0.0) == 0.0);
  const double f = f_measure(0.59, 0.76);
  CHECK(f == doctest::Approx(2 * 0.59 * 0.76 / 1.35).epsilon(1e-15));
  CHECK(std::round(f * 100.0) / 100.0 == doctest::Approx(0.66));
}

TEST_CASE("hand-counted report") {
  const Labels gold{"A", "A", "A", "B", "B", "C"};
  const Labels pred{"A", "A", "B", "B", "A", "D"};
  const Report r = prf(pred, gold);
  REQUIRE(r.per_label.size() == 3);
  CHECK(r.per_label.at("A").precision == doctest::Approx(2.0 / 3.0));
  CHECK(r.per_label.at("A").recall == doctest::Approx(2.0 / 3.0));
  CHECK(r.per_label.at("B").precision == doctest::Approx(0.5));
  CHECK(r.per_label.at("B").recall == doctest::Approx(0.5));
  CHECK(r.per_label.at("C").precision == 0.0);
  CHECK(r.per_label.at("C").f_measure == 0.0);
  CHECK(r.macro_precision == doctest::Approx((2.0 / 3.0 + 0.5) / 3.0));
  CHECK(r.macro_f == doctest::Approx((2.0 / 3.0 + 0.5) / 3.0));
  CHECK(r.micro_precision == doctest::Approx(0.5));
  CHECK(r.confusion.at("A").at("B") == 1);
  CHECK(r.confusion.at("C").at("D") == 1);
  CHECK_THROWS_AS(prf(Labels{"A"}, gold), DomainError);
}

TEST_CASE("perfect predictions") {
  const Labels gold{"x", "y", "y", "z"};
  const Report r = prf(gold, gold);
  for (const auto& [label, s] : r.per_label) {
    CHECK(s.precision == 1.0);
    CHECK(s.recall == 1.0);
    CHECK(s.f_measure == 1.0);
  }
  CHECK(r.macro_f == 1.0);
}

TEST_CASE("prf is permutation invariant and bounded") {
  Rng rng(8);
  const Labels names{"a", "b", "c", "d"};
  Labels gold, pred;
  for (int i = 0; i < 300; ++i) {
    gold.push_back(names[rng.below(4)]);
    pred.push_back(rng.below(3) == 0 ? gold.back() : names[rng.below(4)]);
  }
  const Report r = prf(pred, gold);
  std::vector<std::size_t> perm(gold.size());
  for (std::size_t i = 0; i < perm.size(); ++i) perm[i] = i;
  for (std::size_t i = perm.size(); i > 1; --i) std::swap(perm[i - 1], perm[rng.below(i)]);
  Labels g2, p2;
  for (auto i : perm) {
    g2.push_back(gold[i]);
    p2.push_back(pred[i]);
  }
  const Report s = prf(p2, g2);
  CHECK(to_json(r) == to_json(s));
  for (const auto& [label, x] : r.per_label) {
    CHECK(x.precision >= 0.0);
    CHECK(x.precision <= 1.0);
    CHECK(x.recall <= 1.0);
    if (x.precision > 0 && x.recall > 0) {
      CHECK(x.f_measure <= std::max(x.precision, x.recall));
      CHECK(x.f_measure >= std::min(x.precision, x.recall));
    }
  }
}

TEST_CASE("pure clusters score perfectly after mapping") {
  const std::vector<std::size_t> cats{0, 0, 1, 2, 2, 3};
  const Labels gold{"A", "A", "B", "C", "C", "A"};
  const ClusterLabelMap m = map_clusters_majority(cats, gold);
  Labels pred;
  for (auto c : cats) pred.push_back(m.labels.at(c));
  CHECK(prf(pred, gold).macro_f == 1.0);
}

TEST_CASE("knn on a planar fixture") {
  // cos((1,3), .) = 0.316 (1,0), 0.894 (1,1), 0.949 (0,1), 0.447 (-1,1)
  const std::vector<DocVector> train{{"a1", {1, 0}}, {"a2", {1, 1}}, {"b1", {0, 1}}, {"b2", {-1, 1}}};
  const Labels labels{"A", "A", "B", "B"};
  const std::vector<double> q{1, 3};
  CHECK(knn_predict(train, labels, q, 1) == "B");
  CHECK(knn_predict(train, labels, q, 3) == "B");
  // Two neighbours, one vote each: B is closer in summed distance.
  CHECK(knn_predict(train, labels, q, 2) == "B");
  // cos((1,2), .) = 0.447, 0.949, 0.894, 0.316: A wins the 1-1 tie on distance.
  CHECK(knn_predict(train, labels, std::vector<double>{1, 2}, 2) == "A");
  CHECK(knn_predict(train, labels, std::vector<double>{-1, 1}, 1) == "B");
  CHECK(knn_predict(train, Labels{"A", "A", "B", "C"}, std::vector<double>{1, 0.9}, 3) == "A");
  CHECK_THROWS_AS(knn_predict(std::vector<DocVector>{}, Labels{}, q, 1), ParameterError);
  CHECK_THROWS_AS(knn_predict(train, labels, q, 5), ParameterError);
}

TEST_CASE("grid parsing") {
  const auto g = parse_grid("0.1:0.9:0.1");
  REQUIRE(g.size() == 9);
  CHECK(g.front() == 0.1);
  CHECK(g[2] == 0.3);
  CHECK(g.back() == 0.9);
  CHECK(parse_grid("0:1:0.25").size() == 5);
  CHECK(parse_grid("0.5:0.5:0.1") == std::vector<double>{0.5});
  CHECK_THROWS_AS(parse_grid("0.1-0.9"), ParameterError);
  CHECK_THROWS_AS(parse_grid("0.1:0.9:0"), ParameterError);
  CHECK_THROWS_AS(parse_grid("0.9:0.1:0.1"), ParameterError);
}

TEST_CASE("sweep basics") {
  const std::vector<DocVector> v{{"1", {0.1, 0.9}}, {"2", {0.9, 0.1}}, {"3", {0.5, 0.5}}};
  const std::vector<double> grid{0.0, 0.5, 1.0};
  const auto rows = vigilance_sweep(v, fuzzyart::Params{}, grid);
  REQUIRE(rows.size() == 3);
  CHECK(rows[0].categories >= 1);
  CHECK(rows[2].categories == 3);
  CHECK_THROWS_AS(vigilance_sweep(v, fuzzyart::Params{}, std::vector<double>{}), ParameterError);
  CHECK_THROWS_AS(vigilance_sweep(v, fuzzyart::Params{}, std::vector<double>{0.5, 0.2}), ParameterError);

  testing::TempDir tmp;
  save_sweep(rows, tmp / "s.csv");
  CHECK(testing::read_file(tmp / "s.csv") ==
        "rho,categories\n0," + std::to_string(rows[0].categories) + "\n0.5," +
            std::to_string(rows[1].categories) + "\n1,3\n");
}

}
