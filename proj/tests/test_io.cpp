#include <cstdio>
#include <cstdlib>
#include <string>
#include <vector>

#include <doctest.h>
#include <json.hpp>

#include "systolica/constructors.hpp"
#include "systolica/errors.hpp"
#include "systolica/io.hpp"
#include "systolica/orbits.hpp"
#include "systolica/revolution.hpp"

using namespace systolica;

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> cells;
    std::size_t start = 0;
    while (true) {
        const std::size_t comma = line.find(',', start);
        cells.push_back(line.substr(start, comma - start));
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    return cells;
}

std::string first_line(const std::string& text) {
    return text.substr(0, text.find('\n'));
}

} // namespace

TEST_CASE("profile serialization round-trips byte for byte") {
    RandomProfileParams params;
    params.e = 3;
    params.seed = 14;
    for (const Profile& p : {zoll_profile(2, 1.0), random_admissible_profile(params)}) {
        const std::string doc = profile_to_json(p);
        const Profile back = profile_from_json(doc);
        CHECK(profile_to_json(back) == doc);
        // identical coefficients mean identical evaluations, bit for bit
        for (double k : {-0.71, -0.2, 0.37, 0.9})
            CHECK(back.evaluate(k * p.k_plus()) == p.evaluate(k * p.k_plus()));
        CHECK(back.euler().value() == p.euler().value());
    }
}

TEST_CASE("metric serialization round-trips byte for byte") {
    const RevolutionMetric m = perturbed_sphere_metric(0.1, 33);
    const std::string doc = metric_to_json(m);
    const RevolutionMetric back = metric_from_json(doc);
    CHECK(metric_to_json(back) == doc);
    CHECK(back.length() == m.length());
    CHECK(back.rho(1.1) == m.rho(1.1));
}

TEST_CASE("format tags dispatch the two container types") {
    const std::string pdoc = profile_to_json(zoll_profile(1, 1.0));
    const std::string mdoc = metric_to_json(round_sphere_metric(33));
    CHECK(format_tag(pdoc) == "systolica-profile/1");
    CHECK(format_tag(mdoc) == "systolica-revmetric/1");
    CHECK_THROWS_AS((void)format_tag("{}"), ParseError);
    CHECK_THROWS_AS((void)format_tag("not json at all"), ParseError);
    // cross-loading is refused by the tag check
    CHECK_THROWS_AS((void)profile_from_json(mdoc), ParseError);
    CHECK_THROWS_AS((void)metric_from_json(pdoc), ParseError);
}

TEST_CASE("damaged profile documents all surface as parse errors") {
    const std::string doc = profile_to_json(zoll_profile(2, 1.0));
    const nlohmann::json base = nlohmann::json::parse(doc);

    CHECK_THROWS_AS((void)profile_from_json("{ nope"), ParseError);

    {
        nlohmann::json j = base;
        j.erase("euler");
        CHECK_THROWS_AS((void)profile_from_json(j.dump()), ParseError);
    }
    {
        nlohmann::json j = base;
        j["positive_branch"]["kind"] = "quintic";
        CHECK_THROWS_AS((void)profile_from_json(j.dump()), ParseError);
    }
    {
        // header fields must agree with the actual branch domains
        nlohmann::json j = base;
        j["k_plus"] = 0.9;
        CHECK_THROWS_AS((void)profile_from_json(j.dump()), ParseError);
    }
    {
        // malformed shape is an input error even though the constructor is
        // what rejects it
        nlohmann::json j = base;
        j["positive_branch"]["breakpoints"] = {0.0};
        CHECK_THROWS_AS((void)profile_from_json(j.dump()), ParseError);
    }
    {
        nlohmann::json j = base;
        j["euler"] = 0;
        CHECK_THROWS_AS((void)profile_from_json(j.dump()), ParseError);
    }
}

TEST_CASE("damaged metric documents all surface as parse errors") {
    const nlohmann::json base = nlohmann::json::parse(metric_to_json(round_sphere_metric(33)));
    {
        nlohmann::json j = base;
        j["length"] = -1.0;
        CHECK_THROWS_AS((void)metric_from_json(j.dump()), ParseError);
    }
    {
        nlohmann::json j = base;
        j.erase("rho");
        CHECK_THROWS_AS((void)metric_from_json(j.dump()), ParseError);
    }
    {
        // rho domain no longer matches the declared meridian length
        nlohmann::json j = base;
        j["length"] = 2.5;
        CHECK_THROWS_AS((void)metric_from_json(j.dump()), ParseError);
    }
}

TEST_CASE("CSV tables: frozen headers and full-precision cells") {
    CHECK(inequality_csv_header() == "e,branch,systole,volume,ratio,bound,margin,equality");

    InequalityReport rep;
    rep.e = 2;
    rep.branch = "e=2";
    rep.systole = 1.0 / 3.0;
    rep.volume = 2.0 / 3.0;
    rep.ratio = rep.systole * rep.systole / rep.volume;
    rep.bound = 0.5;
    rep.margin = rep.bound - rep.ratio;
    rep.equality_flag = false;
    const auto cells = split_csv_line(inequality_to_csv_row(rep));
    REQUIRE(cells.size() == 8);
    CHECK(cells[0] == "2");
    CHECK(cells[1] == "e=2");
    // %.17g puts every bit of the double on the wire
    CHECK(std::strtod(cells[2].c_str(), nullptr) == rep.systole);
    CHECK(std::strtod(cells[3].c_str(), nullptr) == rep.volume);
    CHECK(std::strtod(cells[4].c_str(), nullptr) == rep.ratio);
    CHECK(std::strtod(cells[6].c_str(), nullptr) == rep.margin);
    CHECK(cells[7] == "0");

    const auto orbits = enumerate_closed_orbits(ellipsoid_profile(1.0, 2.0), 3);
    const std::string table = orbits_to_csv(orbits);
    CHECK(first_line(table) == "k,p,q,period,contractible_period,kind");
    CHECK(table.find("endpoint-fiber") != std::string::npos);
    CHECK(table.find("section") != std::string::npos);

    const std::string gtable = geodesics_to_csv(closed_geodesics(round_sphere_metric(), 2));
    CHECK(first_line(gtable) == "kind,c,p,q,length,delta_theta,arc");
    CHECK(gtable.find("meridian") != std::string::npos);
    CHECK(gtable.find("equator") != std::string::npos);

    CHECK(first_line(trajectory_to_csv({{0.0, 1.0, 2.0, 3.0}})) == "lambda,r,s,t");
    CHECK(first_line(geodesic_trace_to_csv({{0.0, 1.0, 2.0, 3.0}})) == "lambda,x,theta,phi");
}

TEST_CASE("report JSON carries the expected keys") {
    const Profile p = besse_quotient_profile(5, 1.0);
    const auto sys = nlohmann::json::parse(systole_to_json(systole(p)));
    CHECK(sys["value"].get<double>() == doctest::Approx(0.2).epsilon(1e-12));
    CHECK(sys["witness"]["kind"] == "endpoint-fiber");
    CHECK(sys["q_max_used"].get<int>() >= 1);
    CHECK(sys["certification_bound"].get<double>() > 0.0);

    const auto val = nlohmann::json::parse(validation_to_json(p.validate()));
    CHECK(val["all_passed"].get<bool>());
    REQUIRE(val["checks"].is_array());
    CHECK(val["checks"].size() >= 8);
    for (const auto& c : val["checks"]) {
        CHECK(c.contains("name"));
        CHECK(c.contains("passed"));
        CHECK(c.contains("margin"));
    }

    // plateau orbits carry their interval annotation in the JSON table
    const auto arr =
        nlohmann::json::parse(orbits_to_json(enumerate_closed_orbits(ellipsoid_profile(1, 2), 3)));
    bool saw_plateau = false;
    for (const auto& o : arr)
        if (o.contains("plateau")) {
            saw_plateau = true;
            CHECK(o["plateau"]["lo"].get<double>() < o["plateau"]["hi"].get<double>());
        }
    CHECK(saw_plateau);

    const auto spectrum = nlohmann::json::parse(spectrum_to_json(action_spectrum(p, 4)));
    REQUIRE(spectrum.is_array());
    CHECK(spectrum.size() == 2);
    CHECK(spectrum[0]["members"].size() == 2);
}

TEST_CASE("text file helpers") {
    const std::string path = "/tmp/systolica_io_test.txt";
    const std::string body = "line one\nline two\n";
    write_text_file(path, body);
    CHECK(read_text_file(path) == body);
    std::remove(path.c_str());
    CHECK_THROWS_AS((void)read_text_file("/tmp/systolica_io_missing_909.txt"), ParseError);
    CHECK_THROWS_AS(write_text_file("/tmp/no-such-dir-909/x.txt", "y"), Error);
}
