#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "l2boost/datakit.hpp"
#include "l2boost/dselect.hpp"
#include "l2boost/errors.hpp"
#include "l2boost/simlab.hpp"

using namespace l2boost;

namespace {

class TempFile {
public:
  explicit TempFile(const std::string& contents) {
    path_ = std::filesystem::temp_directory_path() /
            ("l2boost_test_" + std::to_string(counter_++) + ".csv");
    std::ofstream out(path_);
    out << contents;
  }
  ~TempFile() { std::filesystem::remove(path_); }
  std::string path() const { return path_.string(); }

private:
  static inline int counter_ = 0;
  std::filesystem::path path_;
};

ColumnRoleMap simple_roles() {
  ColumnRoleMap roles;
  roles.outcome = "y";
  roles.treatment = "d";
  roles.controls = {"x1"};
  return roles;
}

}  // namespace

TEST_CASE("a three-row file loads into three-element vectors") {
  TempFile f("y,d,x1\n1,0,2.5\n2,1,3.5\n3,0,4.5\n");
  const LoadedData data = load_csv(f.path(), simple_roles());
  CHECK(data.y.size() == 3);
  CHECK(data.d.size() == 3);
  CHECK(data.controls.rows() == 3);
  CHECK(data.controls.cols() == 1);
  CHECK(data.rows_dropped == 0);
  CHECK(data.y(2) == 3.0);
  CHECK(data.controls(1, 0) == 3.5);
}

TEST_CASE("a missing cell drops exactly that row") {
  TempFile f("y,d,x1\n1,0,2.5\n2,1,\n3,0,4.5\n");
  const LoadedData data = load_csv(f.path(), simple_roles());
  CHECK(data.y.size() == 2);
  CHECK(data.rows_dropped == 1);
  CHECK(data.y(1) == 3.0);
}

TEST_CASE("distinct errors for bad columns, bad cells and empty files") {
  TempFile f("y,d,x1\n1,0,2.5\n");
  ColumnRoleMap bad_col = simple_roles();
  bad_col.controls = {"zz"};
  CHECK_THROWS_AS(load_csv(f.path(), bad_col), DataError);

  TempFile bad_cell("y,d,x1\n1,0,abc\n");
  CHECK_THROWS_AS(load_csv(bad_cell.path(), simple_roles()), DataError);

  TempFile no_rows("y,d,x1\n1,,\n");
  CHECK_THROWS_AS(load_csv(no_rows.path(), simple_roles()), DataError);

  CHECK_THROWS_AS(load_csv("/nonexistent/file.csv", simple_roles()), DataError);
}

TEST_CASE("semicolon and tab delimiters are auto-detected") {
  TempFile semi("y;d;x1\n1;0;2.5\n2;1;3.5\n");
  CHECK(load_csv(semi.path(), simple_roles()).y.size() == 2);
  TempFile tab("y\td\tx1\n1\t0\t2.5\n2\t1\t3.5\n");
  CHECK(load_csv(tab.path(), simple_roles()).y.size() == 2);
}

TEST_CASE("treatment and endogenous roles are mutually exclusive") {
  TempFile f("y,d,x1\n1,0,2.5\n2,1,3.5\n");
  ColumnRoleMap roles = simple_roles();
  roles.endogenous = "x1";
  CHECK_THROWS_AS(load_csv(f.path(), roles), InvalidInputError);
}

TEST_CASE("write, reload and re-estimate reproduces the estimate exactly") {
  Rng rng(71);
  const SimulatedDataset ds = gen_controls(ControlsSparseSpec{80, 5, 2, 0.5}, rng);
  const DesignMatrix X(ds.x);
  const DoubleSelectionResult direct = double_select(ds.y, ds.d, X, DSConfig{});

  std::string csv = "y,d";
  for (int j = 0; j < 5; ++j) csv += ",x" + std::to_string(j);
  csv += "\n";
  char buf[64];
  for (Index i = 0; i < 80; ++i) {
    std::snprintf(buf, sizeof buf, "%.17g,", ds.y(i));
    csv += buf;
    std::snprintf(buf, sizeof buf, "%.17g", ds.d(i));
    csv += buf;
    for (Index j = 0; j < 5; ++j) {
      std::snprintf(buf, sizeof buf, ",%.17g", ds.x(i, j));
      csv += buf;
    }
    csv += "\n";
  }
  TempFile f(csv);

  ColumnRoleMap roles;
  roles.outcome = "y";
  roles.treatment = "d";
  for (int j = 0; j < 5; ++j) roles.controls.push_back("x" + std::to_string(j));
  const LoadedData loaded = load_csv(f.path(), roles);
  const DoubleSelectionResult reloaded =
      double_select(loaded.y, loaded.d, DesignMatrix(loaded.controls), DSConfig{});
  CHECK(reloaded.alpha_hat == doctest::Approx(direct.alpha_hat).epsilon(1e-12));
  CHECK(reloaded.se == doctest::Approx(direct.se).epsilon(1e-12));
}

TEST_CASE("a single covariate expands to itself") {
  Rng rng(72);
  Matrix table(50, 1);
  for (Index i = 0; i < 50; ++i) table(i, 0) = rng.normal();
  const ExpandedDesign ed = expand_design(table, {"a"}, ExpansionConfig{});
  CHECK(ed.design.cols() == 1);
  CHECK(ed.design.names() == std::vector<std::string>{"a"});
  CHECK(ed.dropped.empty());
}

TEST_CASE("duplicated covariates lose the copy to the correlation filter") {
  Rng rng(73);
  Matrix table(50, 2);
  for (Index i = 0; i < 50; ++i) table(i, 0) = rng.normal();
  table.col(1) = table.col(0);
  ExpansionConfig cfg;
  cfg.include_interactions = false;
  const ExpandedDesign ed = expand_design(table, {"a", "b"}, cfg);
  CHECK(ed.design.cols() == 1);
  REQUIRE(ed.dropped.size() == 1);
  CHECK(ed.dropped[0].name == "b");
  CHECK(ed.dropped[0].reason == DropReason::high_correlation);
}

TEST_CASE("expansion filters match a hand enumeration") {
  // Five covariates: three continuous, one indicator with 25 ones, one with
  // 10 ones, n = 100. Candidates: 5 mains + 10 pairwise products. By hand:
  // b2 falls to the sparse-indicator filter (10 < 20), and b1:b2 likewise
  // (at most 10 ones). Everything else stays.
  Rng rng(74);
  const Index n = 100;
  Matrix table(n, 5);
  for (Index i = 0; i < n; ++i) {
    table(i, 0) = rng.normal();
    table(i, 1) = rng.normal();
    table(i, 2) = rng.normal();
    table(i, 3) = i < 25 ? 1.0 : 0.0;
    table(i, 4) = i < 10 ? 1.0 : 0.0;
  }
  const std::vector<std::string> names = {"c1", "c2", "c3", "b1", "b2"};
  const ExpandedDesign ed = expand_design(table, names, ExpansionConfig{});

  const std::vector<std::string> expected_kept = {
      "c1", "c2", "c3", "b1", "c1:c2", "c1:c3", "c1:b1", "c1:b2",
      "c2:c3", "c2:b1", "c2:b2", "c3:b1", "c3:b2"};
  CHECK(ed.design.names() == expected_kept);
  REQUIRE(ed.dropped.size() == 2);
  CHECK(ed.dropped[0].name == "b2");
  CHECK(ed.dropped[0].reason == DropReason::sparse_indicator);
  CHECK(ed.dropped[1].name == "b1:b2");
  CHECK(ed.dropped[1].reason == DropReason::sparse_indicator);
}

TEST_CASE("constant columns and constant products are logged once each") {
  Matrix table(30, 2);
  for (Index i = 0; i < 30; ++i) {
    table(i, 0) = double(i % 7) - 3.0;
    table(i, 1) = 2.0;  // constant
  }
  ExpansionConfig cfg;
  cfg.min_ones = 0;
  const ExpandedDesign ed = expand_design(table, {"v", "k"}, cfg);
  CHECK(ed.design.cols() == 1);
  REQUIRE(ed.dropped.size() == 2);  // the constant main and v:k (== 2v)
  CHECK(ed.dropped[0].name == "k");
  CHECK(ed.dropped[0].reason == DropReason::constant_column);
  CHECK(ed.dropped[1].name == "v:k");
  CHECK(ed.dropped[1].reason == DropReason::high_correlation);
}

TEST_CASE("an all-dropped expansion is an error") {
  Matrix table = Matrix::Ones(25, 1);
  CHECK_THROWS_AS(expand_design(table, {"k"}, ExpansionConfig{}), DataError);
}

TEST_CASE("expansion is deterministic") {
  Rng rng(75);
  Matrix table(60, 4);
  for (Index i = 0; i < 60; ++i)
    for (Index j = 0; j < 4; ++j) table(i, j) = rng.normal();
  const ExpandedDesign a = expand_design(table, {}, ExpansionConfig{});
  const ExpandedDesign b = expand_design(table, {}, ExpansionConfig{});
  CHECK(a.design.names() == b.design.names());
  CHECK((a.design.raw() - b.design.raw()).cwiseAbs().maxCoeff() == 0.0);
  CHECK(a.dropped.size() == b.dropped.size());
}
