#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <fstream>

#include "quadrics/report.hpp"

using namespace quadrics;

static const char* kSample = R"(# a complete file
name: sample
group: demo
vars: x y z
field: Q

x^2 - y*z    # generators may carry trailing comments
x*y + z^2
expect: colength = 12
expect: gorenstein = no
)";

TEST_CASE("ideal files parse every directive", "[corpus_io]") {
    auto f = parse_ideal_file(kSample);
    CHECK(f.name == "sample");
    CHECK(f.group == "demo");
    CHECK(f.variables == std::vector<std::string>{"x", "y", "z"});
    CHECK(f.nvars() == 3);
    CHECK(f.rational_field);
    REQUIRE(f.generators.size() == 2);
    CHECK(to_string(f.generators[0], f.variables) == "x^2 - y*z");
    CHECK(f.expectations.at("colength") == "12");
    CHECK(f.expectations.at("gorenstein") == "no");
    CHECK(f.ideal()->nvars() == 3);
}

TEST_CASE("field tags pick the computation mode", "[corpus_io]") {
    auto q = parse_ideal_file("vars: x y\nx^2\n");
    Options base;
    CHECK(q.options(base).certified());

    auto fp = parse_ideal_file("vars: x y\nfield: Fp:101\nx^2\n");
    CHECK_FALSE(fp.rational_field);
    CHECK(fp.prime == 101);
    Options o = fp.options(base);
    CHECK_FALSE(o.certified());
    CHECK(o.screening_prime() == 101);
}

static int error_line(const std::string& text) {
    try {
        parse_ideal_file(text);
    } catch (const IdealFileError& e) {
        // the message itself must carry the line number
        CHECK(std::string(e.what()).find("line " + std::to_string(e.line)) !=
              std::string::npos);
        return e.line;
    }
    return -1;
}

TEST_CASE("ideal file errors carry line numbers", "[corpus_io]") {
    CHECK(error_line("vars: x y\nvars: x y\n") == 2);
    CHECK(error_line("vars: x x\n") == 1);
    CHECK(error_line("vars:\nx^2\n") == 1);
    CHECK(error_line("vars: x y\nfield: R\n") == 2);
    CHECK(error_line("vars: x y\nfield: Fp:abc\n") == 2);
    CHECK(error_line("vars: x y\nfield: Fp:1\n") == 2);
    CHECK(error_line("x^2\nvars: x y\n") == 1);
    CHECK(error_line("vars: x y\nx^2 + y\n") == 2);      // inhomogeneous
    CHECK(error_line("vars: x y\nx^2 - x^2\n") == 2);    // zero generator
    CHECK(error_line("vars: x y\n7\n") == 2);            // unit generator
    CHECK(error_line("vars: x y\nx^2 +\n") == 2);        // parse error
    CHECK(error_line("vars: x y\nwhatever: 3\nx^2\n") == 2);
    CHECK(error_line("vars: x y\nexpect: e1\nx^2\n") == 2);
    CHECK(error_line("vars: x y\nx^2\nexpect: e1 = 4\nexpect: e1 = 5\n") == 4);
    CHECK(error_line("# only a comment\n") > 0);          // missing vars
    CHECK(error_line("vars: x y\n# no generators\n") > 0);
}

TEST_CASE("loading a file defaults the name to its stem", "[corpus_io]") {
    std::string path = "io_test_stem.ideal";
    {
        std::ofstream out(path);
        out << "vars: x y\nx^2\ny^2\n";
    }
    auto f = load_ideal_file(path);
    CHECK(f.name == "io_test_stem");
    std::remove(path.c_str());
    CHECK_THROWS_AS(load_ideal_file("does_not_exist.ideal"),
                    std::runtime_error);
}

static IdealFile gor_file() {
    return parse_ideal_file(
        "name: gor\nvars: x y z\n"
        "x*y\nx*z\ny*z\nx^2 - y^2\nx^2 - z^2\n");
}

TEST_CASE("reports are byte-deterministic", "[corpus_io]") {
    Options opt;
    auto f = gor_file();
    auto a = report_json(f, run_invariants(f.ideal(), opt), opt).dump(2);
    auto b = report_json(f, run_invariants(f.ideal(), opt), opt).dump(2);
    CHECK(a == b);

    auto ca = classification_json(f, classify(f.ideal(), opt), opt).dump(2);
    auto cb = classification_json(f, classify(f.ideal(), opt), opt).dump(2);
    CHECK(ca == cb);
}

TEST_CASE("report json layout", "[corpus_io]") {
    Options opt;
    auto f = gor_file();
    auto rep = run_invariants(f.ideal(), opt);
    auto j = report_json(f, rep, opt);
    CHECK(j["schema"] == 1);
    CHECK(j["artinian"] == true);
    CHECK(j["mode"] == "certified");
    CHECK(j["name"] == "gor");
    CHECK(j["hilbert_function"]["colength"] == 5);
    CHECK(j["hilbert_function"]["values"] ==
          json(std::vector<long long>{1, 3, 1, 0}));
    CHECK(j["cm_type"] == 1);
    CHECK(j["gorenstein"]["value"] == true);
    CHECK(j["syzygetic"]["status"] == "syzygetic");
    CHECK(j["square"]["minimal_generators"] == 15);
    CHECK(j["hilbert_samuel"]["e0"] == 8);
    CHECK(j["hilbert_samuel"]["e1"] == 4);
    CHECK(j["sally"]["s0"] == 1);
    CHECK(j["reduction"]["verified"] == true);
    CHECK(j["reduction"]["r"] == 2);
    // nothing machine- or time-dependent may appear
    for (auto it = j.begin(); it != j.end(); ++it) {
        CHECK(it.key().find("time") == std::string::npos);
        CHECK(it.key().find("duration") == std::string::npos);
    }
}

TEST_CASE("stages gate which invariants are computed", "[corpus_io]") {
    Options opt;
    auto f = gor_file();

    auto base_only = run_invariants(f.ideal(), opt, Stages{false, false});
    auto vb = expectation_values(base_only, nullptr);
    CHECK(vb.count("colength") == 1);
    CHECK(vb.count("nu") == 1);
    CHECK(vb.count("syzygetic") == 0);
    CHECK(vb.count("e0") == 0);

    auto square_only = run_invariants(f.ideal(), opt, Stages{true, false});
    auto vs = expectation_values(square_only, nullptr);
    CHECK(vs.at("syzygetic") == "syzygetic");
    CHECK(vs.at("nu_square") == "15");
    CHECK(vs.at("square_is_m4") == "yes");
    CHECK(vs.count("e0") == 0);
    CHECK(vs.count("fiber") == 0);

    auto full = run_invariants(f.ideal(), opt);
    auto vf = expectation_values(full, nullptr);
    CHECK(vf.at("e0") == "8");
    CHECK(vf.at("e1") == "4");
    CHECK(vf.at("s0") == "1");
    CHECK(vf.at("hf") == "1,3,1,0");
    CHECK(vf.at("huckaba_equality") == "no");
    CHECK(vf.at("reduction_r") == "2");

    auto cls = classify(f.ideal(), opt);
    auto vc = expectation_values(full, &cls);
    CHECK(vc.at("signature") == "0,3");
    CHECK(vc.at("plus_binomials") == "2");
    CHECK(vc.at("core_signature") == "0,3");
    CHECK(vc.at("decomposition_r") == "0");
    CHECK(vc.at("dual_regenerates") == "yes");
}

TEST_CASE("orbit and four-quadric expectation keys", "[corpus_io]") {
    Options opt;
    auto fb = parse_ideal_file(
        "vars: x y z\nx^2\nx*y\nx*z\ny*z\ny^2 + 2*z^2\n");
    auto cls = classify(fb.ideal(), opt);
    auto rep = run_invariants(fb.ideal(), opt);
    auto v = expectation_values(rep, &cls);
    CHECK(v.at("orbit") == "B");
    CHECK(v.at("orbit_c") == "2");
    CHECK(v.at("normalized_over_Q") == "no");

    auto f4 = parse_ideal_file("vars: x y z\nx^2\ny^2\nz^2\nx*y + x*z\n");
    auto cls4 = classify(f4.ideal(), opt);
    auto rep4 = run_invariants(f4.ideal(), opt);
    auto v4 = expectation_values(rep4, &cls4);
    CHECK(v4.at("u") == "1");
    CHECK(v4.at("v") == "1");
    CHECK(v4.at("sally_identity") == "yes");
    CHECK(v4.at("reduction_r") == "3");
}

TEST_CASE("partial reports for non-artinian input", "[corpus_io]") {
    Options opt;
    auto f = parse_ideal_file("name: bad\nvars: x y z\nx^2\nx*y\n");
    auto j = partial_report_json(f, opt, "quotient is not finite-dimensional");
    CHECK(j["schema"] == 1);
    CHECK(j["artinian"] == false);
    CHECK(j["error"] == "quotient is not finite-dimensional");
    CHECK(j.count("hilbert_function") == 0);
}

TEST_CASE("classification json branches", "[corpus_io]") {
    Options opt;
    auto f = gor_file();
    auto jg = classification_json(f, classify(f.ideal(), opt), opt);
    CHECK(jg["gorenstein"] == true);
    CHECK(jg.count("normal_form") == 1);
    CHECK(jg.count("dual_basis") == 1);
    CHECK(jg.count("five_quadrics") == 1);
    CHECK(jg["decomposition"]["r"] == 0);
    CHECK(jg["normal_form"]["signature"]["canonical"] == json({0, 3}));
    CHECK(jg["dual_basis"]["equality"]["status"] == "equal");

    auto fa = parse_ideal_file("vars: x y z\nx^2\nx*y\nx*z\ny^2\nz^2\n");
    auto ja = classification_json(fa, classify(fa.ideal(), opt), opt);
    CHECK(ja["gorenstein"] == false);
    CHECK(ja.count("normal_form") == 0);
    CHECK(ja.count("dual_basis") == 0);
    CHECK(ja["five_quadrics"]["orbit"]["orbit"] == "A");
    CHECK(ja["decomposition"]["type"] == 2);

    auto f4 = parse_ideal_file("vars: x y z\nx^2\ny^2\nz^2\nx*y\n");
    auto j4 = classification_json(f4, classify(f4.ideal(), opt), opt);
    CHECK(j4.count("four_quadrics") == 1);
    CHECK(j4.count("five_quadrics") == 0);
    CHECK(j4["four_quadrics"]["e1"] == 2);
}

TEST_CASE("text rendering mentions the headline facts", "[corpus_io]") {
    Options opt;
    auto f = gor_file();
    auto text = report_text(f, run_invariants(f.ideal(), opt), opt);
    CHECK(text.find("hilbert function   1, 3, 1, 0") != std::string::npos);
    CHECK(text.find("colength 5") != std::string::npos);
    CHECK(text.find("e0 8, e1 4, s0 1") != std::string::npos);
    CHECK(text.find("reduction          r = 2") != std::string::npos);

    auto fa = parse_ideal_file("vars: x y z\nx^2\nx*y\nx*z\ny^2\nz^2\n");
    auto ta = report_text(fa, run_invariants(fa.ideal(), opt), opt);
    CHECK(ta.find("huckaba equality") != std::string::npos);

    auto ct = classification_text(f, classify(f.ideal(), opt), opt);
    CHECK(ct.find("gorenstein, submaximal") != std::string::npos);
    CHECK(ct.find("dual basis") != std::string::npos);
}
