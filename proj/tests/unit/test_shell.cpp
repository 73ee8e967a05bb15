#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <map>
#include <set>
#include <sstream>

#include <json.hpp>

#include "bishop/errors.hpp"
#include "bishop/shell.hpp"
#include "oracles.hpp"

using namespace bishop;

namespace {

const AnalysisReport& example(ExampleId id, double alpha = 2.0) {
  static std::map<std::pair<int, double>, AnalysisReport> cache;
  const auto key = std::make_pair(static_cast<int>(id), alpha);
  auto it = cache.find(key);
  if (it == cache.end()) {
    ExampleSpec s{id};
    s.alpha = alpha;
    it = cache.emplace(key, run_example(s, LocusParams{})).first;
  }
  return it->second;
}

std::set<TangentClass> classes_of(const LocusComponent& c) { return {c.classes.begin(), c.classes.end()}; }

struct CsvRow {
  int id;
  std::size_t index;
  double x, y, z;
  std::string gamma, cls;
};

std::vector<CsvRow> parse_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::getline(in, line);
  std::vector<CsvRow> rows;
  while (std::getline(in, line)) {
    std::vector<std::string> f;
    std::stringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) f.push_back(cell);
    if (f.size() == 6) f.emplace_back();
    REQUIRE(f.size() == 7);
    rows.push_back({std::stoi(f[0]), std::stoul(f[1]), std::stod(f[2]), std::stod(f[3]), std::stod(f[4]), f[5], f[6]});
  }
  return rows;
}

// Largest distance from the best-fit plane, normal from the smallest
// eigenvalue of the covariance matrix.
double planarity_residual(const std::vector<CsvRow>& rows) {
  double c[3] = {0, 0, 0};
  for (const auto& r : rows) {
    c[0] += r.x;
    c[1] += r.y;
    c[2] += r.z;
  }
  for (double& v : c) v /= rows.size();
  double m[3][3] = {};
  for (const auto& r : rows) {
    const double d[3] = {r.x - c[0], r.y - c[1], r.z - c[2]};
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) m[i][j] += d[i] * d[j];
    }
  }
  const double tr = m[0][0] + m[1][1] + m[2][2];
  const double minors = m[0][0] * m[1][1] - m[0][1] * m[1][0] + m[0][0] * m[2][2] - m[0][2] * m[2][0] +
                        m[1][1] * m[2][2] - m[1][2] * m[2][1];
  const double det = m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
                     m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
  const double lambda = oracle::cubic_roots(1.0, -tr, minors, -det)[0];
  // Normal: largest cross product of two rows of (M - lambda I).
  double best[3] = {0, 0, 0}, best_norm = 0.0;
  for (int a = 0; a < 3; ++a) {
    for (int b = a + 1; b < 3; ++b) {
      double ra[3], rb[3];
      for (int k = 0; k < 3; ++k) {
        ra[k] = m[a][k] - (a == k ? lambda : 0.0);
        rb[k] = m[b][k] - (b == k ? lambda : 0.0);
      }
      const double n[3] = {ra[1] * rb[2] - ra[2] * rb[1], ra[2] * rb[0] - ra[0] * rb[2], ra[0] * rb[1] - ra[1] * rb[0]};
      const double nn = std::sqrt(n[0] * n[0] + n[1] * n[1] + n[2] * n[2]);
      if (nn > best_norm) {
        best_norm = nn;
        for (int k = 0; k < 3; ++k) best[k] = n[k] / nn;
      }
    }
  }
  double worst = 0.0;
  for (const auto& r : rows) {
    worst = std::max(worst, std::abs((r.x - c[0]) * best[0] + (r.y - c[1]) * best[1] + (r.z - c[2]) * best[2]));
  }
  return worst;
}

}  // namespace

TEST_CASE("run_analyze examples") {
  const LocusParams params;
  const AnalysisReport a = run_analyze("0.5*zb^2 + wb", params);
  REQUIRE(a.components.size() == 1);
  CHECK(a.components[0].kind == LocusKind::curve);
  CHECK(classes_of(a.components[0]) == std::set{TangentClass::parabolic});
  CHECK(a.expression == "0.5*zb^2 + wb");
  CHECK(a.tool_version == tool_version());

  const AnalysisReport s = run_analyze("zb*wb", params);
  REQUIRE(s.components.size() == 1);
  CHECK(s.components[0].kind == LocusKind::surface);
  CHECK(classes_of(s.components[0]) == std::set{TangentClass::parabolic});

  const AnalysisReport t = run_analyze("wb^2", params);
  REQUIRE(t.components.size() == 2);
  std::multiset<std::set<TangentClass>> kinds;
  for (const auto& c : t.components) {
    CHECK(c.kind == LocusKind::curve);
    kinds.insert(classes_of(c));
    if (classes_of(c) == std::set{TangentClass::elliptic}) {
      for (const auto& g : c.gammas) CHECK(*g.gamma <= 1e-8);
    }
  }
  CHECK(kinds == std::multiset<std::set<TangentClass>>{{TangentClass::elliptic}, {TangentClass::hyperbolic_infinity}});

  CHECK_THROWS_AS(run_analyze("zb +* w", params), ParseError);
}

TEST_CASE("run_example examples") {
  const AnalysisReport& r4 = example(ExampleId::ex4);
  REQUIRE(r4.components.size() == 1);
  CHECK(r4.components[0].closed);
  for (const auto& g : r4.components[0].gammas) CHECK(*g.gamma < 1e-10);

  const AnalysisReport& r5 = example(ExampleId::ex5);
  REQUIRE(r5.components.size() == 2);
  std::set<std::set<TangentClass>> cls = {classes_of(r5.components[0]), classes_of(r5.components[1])};
  CHECK(cls == std::set<std::set<TangentClass>>{{TangentClass::elliptic}, {TangentClass::hyperbolic}});
  CHECK_FALSE(r5.notes.empty());

  const AnalysisReport& r6 = example(ExampleId::ex6);
  REQUIRE(r6.components.size() == 1);
  CHECK(r6.components[0].kind == LocusKind::point);
  CHECK(classes_of(r6.components[0]) == std::set{TangentClass::degenerate});

  CHECK_FALSE(example(ExampleId::ex2).notes.empty());
  CHECK_FALSE(example(ExampleId::ex2, 0.25).notes.empty());
  ExampleSpec bad{ExampleId::ex4};
  bad.p = 2;
  bad.q = 4;
  CHECK_THROWS_AS(run_example(bad, LocusParams{}), NotCoprime);
  ExampleSpec neg{ExampleId::ex7};
  neg.eps = -1.0;
  CHECK_THROWS_AS(run_example(neg, LocusParams{}), InvalidArgument);
}

TEST_CASE("geometry export") {
  const std::string csv1 = geometry_csv(example(ExampleId::ex1));
  CHECK(csv1.rfind("component_id,index,x,y,z,gamma,class\n", 0) == 0);
  const auto rows1 = parse_csv(csv1);
  CHECK(rows1.size() == example(ExampleId::ex1).components[0].points.size());
  CHECK(planarity_residual(rows1) < 1e-6);

  const auto rows5 = parse_csv(geometry_csv(example(ExampleId::ex5)));
  std::set<int> ids;
  for (const auto& r : rows5) ids.insert(r.id);
  CHECK(ids == std::set<int>{0, 1});
  double gap = 1e300;
  for (const auto& a : rows5) {
    if (a.id != 0) continue;
    for (const auto& b : rows5) {
      if (b.id == 1) gap = std::min(gap, std::hypot(a.x - b.x, a.y - b.y, a.z - b.z));
    }
  }
  CHECK(gap > 1e-2);

  const std::set<std::string> valid = {"elliptic", "parabolic", "hyperbolic", "hyperbolic_infinity", "degenerate"};
  for (auto id : {ExampleId::ex2c, ExampleId::ex6, ExampleId::ex5}) {
    for (const auto& r : parse_csv(geometry_csv(example(id)))) CHECK(valid.count(r.cls) == 1);
  }
  for (const auto& r : parse_csv(geometry_csv(example(ExampleId::ex2c)))) {
    if (r.cls == "hyperbolic_infinity") CHECK(r.gamma == "inf");
  }

  AnalysisReport empty;
  CHECK(geometry_csv(empty) == "component_id,index,x,y,z,gamma,class\n");
  const auto path = std::filesystem::temp_directory_path() / "bishop_empty_geometry.csv";
  export_geometry(empty, std::nullopt, path);
  CHECK(read_text(path) == "component_id,index,x,y,z,gamma,class\n");
  std::filesystem::remove(path);
}

TEST_CASE("run_linking examples") {
  CHECK(std::abs(std::abs(run_linking(example(ExampleId::ex5), 0, 1)) - 2.0) <= 1e-3);

  // ex2(2): {z = 0} and {|w| = 1/4}, the latter parametrized exactly by
  // z = sqrt(15/16) e^{it}, w = e^{2it}/4.
  const AnalysisReport& r2 = example(ExampleId::ex2);
  const double lk = run_linking(r2, 0, 1);
  const auto pole = to_r4(select_pole(r2.components));
  const double orc = oracle::gauss_linking(
      [&](double t) { return oracle::project_from(pole, 0.0, std::polar(1.0, t)); },
      [&](double t) { return oracle::project_from(pole, std::polar(std::sqrt(15.0 / 16.0), t), std::polar(0.25, 2 * t)); });
  CHECK(std::abs(std::abs(orc) - 1.0) <= 1e-3);
  CHECK(std::abs(std::abs(lk) - std::abs(orc)) <= 2e-3);

  CHECK_THROWS_AS(run_linking(example(ExampleId::ex5), 0, 7), InvalidArgument);
}

TEST_CASE("report JSON round trip") {
  for (auto id : {ExampleId::ex1, ExampleId::ex2c, ExampleId::ex5, ExampleId::ex6, ExampleId::torus_surface}) {
    const AnalysisReport& r = example(id);
    const std::string text = serialize(r);
    CHECK(deserialize(text) == r);
    CHECK(serialize(deserialize(text)) == text);
    const auto j = nlohmann::json::parse(text);
    for (const char* key : {"tool_version", "expression", "rng_seed", "tolerances", "params", "components",
                            "indeterminate_points"}) {
      CHECK(j.contains(key));
    }
  }
  const auto j = nlohmann::json::parse(serialize(example(ExampleId::ex2c)));
  bool saw_inf = false;
  for (const auto& c : j["components"]) {
    for (const auto& g : c["gammas"]) saw_inf = saw_inf || g["gamma"] == "inf";
  }
  CHECK(saw_inf);

  CHECK_THROWS_AS(deserialize("{"), InvalidArgument);
  CHECK_THROWS_AS(deserialize("[]"), InvalidArgument);
  CHECK_THROWS_AS(deserialize(R"({"expression": 3})"), InvalidArgument);
}

TEST_CASE("run_perturb examples") {
  const LocusParams params;
  ExampleSpec s7{ExampleId::ex7};
  const auto d7 = run_perturb(s7, {0.1}, params);
  REQUIRE(d7.size() == 1);
  CHECK(d7[0].degeneracy_removed);
  CHECK(d7[0].locus_unchanged);
  CHECK(d7[0].epsilon == 0.1);

  const auto d6 = run_perturb({ExampleId::ex6b}, {0.05}, params);
  REQUIRE(d6.size() == 1);
  CHECK(d6[0].base_components == KindCounts{1, 0, 0});
  CHECK(d6[0].perturbed_components == KindCounts{0, 1, 0});

  const auto d8 = run_perturb({ExampleId::ex8}, {0.1}, params);
  REQUIRE(d8.size() == 1);
  CHECK(d8[0].base_components == KindCounts{1, 1, 0});
  CHECK(d8[0].base_degenerate);
  CHECK(d8[0].perturbed_components == KindCounts{0, 2, 0});
  CHECK_FALSE(d8[0].perturbed_degenerate);
  CHECK(d8[0].degeneracy_removed);

  const auto j = nlohmann::json::parse(serialize(d8));
  REQUIRE(j.size() == 1);
  CHECK(j[0]["degeneracy_removed"] == true);

  CHECK_THROWS_AS(run_perturb({ExampleId::ex1}, {0.1}, params), InvalidArgument);
}
