#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <string>
#include <vector>

#include "srheat/frame_parse.hpp"
#include "srheat/json_io.hpp"
#include "srheat/steptwo.hpp"
#include "srheat/structure_constants.hpp"
#include "srheat/vf_analyzer.hpp"

using namespace srheat;

namespace {

Polynomial var(int d, int i) { return Polynomial::variable(d, i); }  // 0-based

}  // namespace

TEST_CASE("polynomial expressions parse to expanded sparse form") {
    CHECK(parse_polynomial("0", 2).is_zero());
    CHECK(parse_polynomial("  0.0 ", 2).is_zero());
    CHECK(parse_polynomial("x1 - x1", 3).is_zero());

    {
        Polynomial p = parse_polynomial("0.5*x2", 3);
        CHECK(p.terms().size() == 1);
        CHECK(p.coeff({0, 1, 0}) == 0.5);
    }
    {
        // Binomial expansion done by the parser's repeated multiplication.
        Polynomial p = parse_polynomial("(x1+x2)^2", 2);
        Polynomial sum = var(2, 0);
        sum += var(2, 1);
        CHECK(p == sum * sum);
        CHECK(p.coeff({1, 1}) == 2.0);
    }
    {
        // '*' binds tighter than '+', '^' tighter than '*'.
        Polynomial p = parse_polynomial("1 + 2*x1^2*x2", 2);
        CHECK(p.coeff({0, 0}) == 1.0);
        CHECK(p.coeff({2, 1}) == 2.0);
        CHECK(p.terms().size() == 2);
    }
    {
        // Unary minus distributes over the whole factor, including powers.
        Polynomial p = parse_polynomial("-x1^2 + - 3", 1);
        CHECK(p.coeff({2}) == -1.0);
        CHECK(p.coeff({0}) == -3.0);
        Polynomial q = parse_polynomial("-(x1 - 2)*x1", 1);
        CHECK(q.coeff({2}) == -1.0);
        CHECK(q.coeff({1}) == 2.0);
    }
    {
        // Scientific notation and x^0.
        Polynomial p = parse_polynomial("2.5e-1*x1^0", 4);
        CHECK(p.coeff({0, 0, 0, 0}) == 0.25);
    }
}

TEST_CASE("operator precedence matches the documented grammar") {
    // a - b + c is left associative: (a-b)+c.
    Polynomial p = parse_polynomial("x1 - x1 + x1", 1);
    CHECK(p == var(1, 0));
    // 2*x1^3 is 2*(x1^3), not (2*x1)^3.
    Polynomial q = parse_polynomial("2*x1^3", 1);
    CHECK(q.coeff({3}) == 2.0);
    CHECK(q.terms().size() == 1);
    // (x1*x2)^2 forces grouping.
    Polynomial r = parse_polynomial("(x1*x2)^2", 2);
    CHECK(r.coeff({2, 2}) == 1.0);
}

TEST_CASE("parse failures carry line and column positions") {
    auto message = [](const std::string& src, int d) {
        try {
            parse_polynomial(src, d);
        } catch (const parse_error& e) {
            return std::string(e.what());
        }
        return std::string("(no error)");
    };

    CHECK(message("x5", 3).find("unknown variable x5") != std::string::npos);
    CHECK(message("x5", 3).find("line 1, column 1") != std::string::npos);
    CHECK(message("x1^-1", 3).find("nonnegative") != std::string::npos);
    CHECK(message("x1 + ", 3).find("line 1") != std::string::npos);
    CHECK(message("x1 x2", 3).find("column 4") != std::string::npos);  // trailing input
    CHECK(message("", 3) != "(no error)");
    CHECK(message("x1 +\n* x2", 3).find("line 2, column 1") != std::string::npos);
    CHECK(message("(x1", 2).find("')'") != std::string::npos);
    CHECK_THROWS_AS((void)parse_polynomial("x1", 0), parse_error);
}

TEST_CASE("frame documents round trip through JSON") {
    const std::string text = R"({
      "d": 3,
      "n": 2,
      "fields": [["1", "0", "-0.5*x2"], ["0", "1", "0.5*x1"]],
      "labels": ["X1", "X2"],
      "points": [[0, 0, 0], [1, -1, 0.5]]
    })";
    FrameSpec spec = parse_frame_spec(text);
    CHECK(spec.d == 3);
    CHECK(spec.n == 2);
    CHECK(spec.fields[1][2] == "0.5*x1");
    CHECK(spec.labels[0] == "X1");
    CHECK(spec.points[1][1] == -1.0);

    FrameSpec again = parse_frame_spec(frame_spec_to_json(spec));
    CHECK(again == spec);

    // Optional blocks may be absent.
    FrameSpec bare = parse_frame_spec(R"({"d":1,"n":1,"fields":[["1"]]})");
    CHECK(bare.labels.empty());
    CHECK(bare.points.empty());
    CHECK(parse_frame_spec(frame_spec_to_json(bare)) == bare);
}

TEST_CASE("frame documents reject malformed input") {
    auto fails = [](const std::string& text, const std::string& needle) {
        try {
            parse_frame_spec(text);
        } catch (const parse_error& e) {
            return std::string(e.what()).find(needle) != std::string::npos;
        }
        return false;
    };

    CHECK(fails("{", "not valid JSON"));
    CHECK(fails("[1,2]", "object"));
    CHECK(fails(R"({"d":2,"n":1,"fields":[["1","0"]],"extra":1})", "unknown key"));
    CHECK(fails(R"({"n":1,"fields":[["1"]]})", "\"d\""));
    CHECK(fails(R"({"d":0,"n":1,"fields":[["1"]]})", "at least 1"));
    CHECK(fails(R"({"d":2,"n":2,"fields":[["1","0"]]})", "expected 2 fields"));
    CHECK(fails(R"({"d":2,"n":1,"fields":[["1"]]})", "field 1 needs 2"));
    CHECK(fails(R"({"d":1,"n":1,"fields":[["1"]],"labels":["a","b"]})", "labels"));
    CHECK(fails(R"({"d":2,"n":1,"fields":[["1","0"]],"points":[[1]]})", "point 1 needs 2"));
    CHECK(fails(R"({"d":1,"n":1,"fields":[["1"]],"points":[["a"]]})", "non-numeric"));
}

TEST_CASE("build_frame aggregates every component failure") {
    FrameSpec spec;
    spec.d = 2;
    spec.n = 2;
    spec.fields = {{"x9", "1"}, {"0", "x1^-2"}};
    try {
        build_frame(spec);
        CHECK(false);
    } catch (const parse_error& e) {
        const std::string msg = e.what();
        CHECK(msg.find("field 1, component 1") != std::string::npos);
        CHECK(msg.find("unknown variable x9") != std::string::npos);
        CHECK(msg.find("field 2, component 2") != std::string::npos);
        CHECK(msg.find("nonnegative") != std::string::npos);
    }

    spec.fields = {{"x2", "1"}, {"0", "x1"}};
    Frame f = build_frame(spec);
    CHECK(f.dim() == 2);
    CHECK(f.count() == 2);
    CHECK(f.field(0).comp[0] == var(2, 1));
}

TEST_CASE("frames survive spec serialization exactly") {
    Frame heis = left_invariant_frame(StructureConstants::heisenberg());
    FrameSpec spec = frame_to_spec(heis);
    CHECK(spec.d == 3);
    CHECK(spec.n == 2);

    Frame rebuilt = build_frame(parse_frame_spec(frame_spec_to_json(spec)));
    CHECK(rebuilt == heis);

    // A curved (non-polynomial-coefficient-1) frame with fractional and
    // nested coefficients round trips through %.17g rendering too.
    FrameSpec curved;
    curved.d = 3;
    curved.n = 2;
    curved.fields = {{"1", "0", "-0.1*x2 + 0.25*x1^2"}, {"0", "1", "0.3333333333333333*x1"}};
    Frame g1 = build_frame(curved);
    Frame g2 = build_frame(parse_frame_spec(frame_spec_to_json(frame_to_spec(g1))));
    CHECK(g2 == g1);
}

TEST_CASE("a parsed contact frame feeds the filtration analyzer") {
    const std::string text = R"({
      "d": 3,
      "n": 2,
      "fields": [["1", "0", "-0.5*x2"], ["0", "1", "0.5*x1"]]
    })";
    Frame frame = build_frame(parse_frame_spec(text));
    FiltrationReport report = filtration(frame, Eigen::VectorXd::Zero(3), 6, 1e-9);
    CHECK(report.certified);
    CHECK(report.growth == std::vector<int>{2, 3});
    CHECK(report.hausdorff_dim == 4);
}

TEST_CASE("structure constant documents parse and serialize") {
    StructureConstants heis = parse_structure_json("heisenberg");
    CHECK(heis.n() == 2);
    CHECK(heis.p() == 1);
    CHECK(heis.matrix(0)(0, 1) == 1.0);

    StructureConstants c = parse_structure_json(R"({"n":2,"matrices":[[[0,1],[-1,0]]]})");
    CHECK(c.n() == 2);
    CHECK(c.p() == 1);
    CHECK(c.matrix(0)(1, 0) == -1.0);

    StructureConstants back = parse_structure_json(structure_to_json(c));
    CHECK(back.n() == c.n());
    CHECK(back.matrix(0) == c.matrix(0));

    auto fails = [](const std::string& text, const std::string& needle) {
        try {
            parse_structure_json(text);
        } catch (const parse_error& e) {
            return std::string(e.what()).find(needle) != std::string::npos;
        }
        return false;
    };
    CHECK(fails("{]", "not valid JSON"));
    CHECK(fails(R"({"n":2})", "matrices"));
    CHECK(fails(R"({"n":2,"matrices":[[[0,1],[-1,0]]],"q":1})", "unknown key"));
    CHECK(fails(R"({"n":2,"matrices":[[[0,1]]]})", "rows"));
    CHECK(fails(R"({"n":2,"matrices":[[[0,1],[-1,"x"]]]})", "number"));
    // Antisymmetry violations surface as document errors.
    CHECK(fails(R"({"n":2,"matrices":[[[0,1],[1,0]]]})", "structure document"));
}

TEST_CASE("CSV cells follow quoting rules") {
    CHECK(csv_cell("plain") == "plain");
    CHECK(csv_cell("a,b") == "\"a,b\"");
    CHECK(csv_cell("he said \"hi\"") == "\"he said \"\"hi\"\"\"");
    CHECK(csv_cell("two\nlines") == "\"two\nlines\"");
    CHECK(csv_row({"a", "b,c"}) == "a,\"b,c\"\r\n");
    CHECK(csv_number(0.25) == "0.25");
    CHECK(csv_number(1.0 / 3.0) == "0.33333333333333331");
}
