// C interface tests; links only the shared library
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "courant.h"

#include <cstdio>
#include <string>
#include <thread>

namespace {

std::string take(char* s)
{
    std::string r = s ? s : "";
    ca_string_free(s);
    return r;
}

} // namespace

TEST_CASE("defaults")
{
    ca_options o;
    ca_options_default(&o);
    CHECK(o.max_degree == 6);
    CHECK(o.page == 2);
    CHECK(o.truncate == -1);
    CHECK(o.samples == 200);
}

TEST_CASE("catalog handles")
{
    ca_spec* s = nullptr;
    REQUIRE(ca_spec_from_catalog("so3", &s) == CA_OK);
    CHECK(std::string(ca_spec_name(s)) == "so3");
    char* j = nullptr;
    REQUIRE(ca_spec_to_json(s, &j) == CA_OK);
    std::string text = take(j);
    ca_spec* t = nullptr;
    REQUIRE(ca_spec_from_text(text.c_str(), &t) == CA_OK);
    REQUIRE(ca_spec_to_json(t, &j) == CA_OK);
    CHECK(take(j) == text);
    ca_spec_free(t);
    ca_spec_free(s);

    char* names = nullptr;
    REQUIRE(ca_catalog_names(&names) == CA_OK);
    std::string all = take(names);
    CHECK(all.find("so3\n") != std::string::npos);
    CHECK(all.find("t4-twisted(1)\n") != std::string::npos);
}

TEST_CASE("errors")
{
    ca_spec* s = reinterpret_cast<ca_spec*>(1);
    CHECK(ca_spec_from_catalog("nosuch", &s) == CA_ERR_INPUT);
    CHECK(s == nullptr);
    CHECK(std::string(ca_last_error()).find("nosuch") != std::string::npos);
    CHECK(ca_spec_from_text("{\"base\": 1}", &s) == CA_ERR_INPUT);
    CHECK(ca_spec_from_file("/nonexistent/spec.json", &s) == CA_ERR_INPUT);
    CHECK(ca_spec_from_catalog(nullptr, &s) == CA_ERR_ARG);
    CHECK(ca_spec_from_catalog("so3", nullptr) == CA_ERR_ARG);
    CHECK(ca_run(nullptr, "all", nullptr, nullptr, nullptr, nullptr) == CA_ERR_ARG);

    REQUIRE(ca_spec_from_catalog("so3", &s) == CA_OK);
    char* text = nullptr;
    CHECK(ca_run(s, "dance", nullptr, &text, nullptr, nullptr) == CA_ERR_ARG);
    CHECK(text == nullptr);
    ca_options o;
    ca_options_default(&o);
    o.page = 5;
    CHECK(ca_run(s, "pages", &o, nullptr, nullptr, nullptr) == CA_ERR_ARG);
    ca_spec_free(s);
    ca_spec_free(nullptr);
}

TEST_CASE("runs")
{
    ca_spec* s = nullptr;
    REQUIRE(ca_spec_from_catalog("so3", &s) == CA_OK);
    char *text = nullptr, *json = nullptr;
    int pass = 0;
    ca_options o;
    ca_options_default(&o);
    o.samples = 30;
    CHECK(ca_run(s, "all", &o, &text, &json, &pass) == CA_OK);
    CHECK(pass == 1);
    std::string t = take(text), j = take(json);
    CHECK(t.find("ALL PASS") != std::string::npos);
    CHECK(j.find("\"pass\": true") != std::string::npos);
    ca_spec_free(s);

    REQUIRE(ca_spec_from_catalog("t4-broken", &s) == CA_OK);
    CHECK(ca_run(s, "master", &o, &text, nullptr, &pass) == CA_ERR_CHECK);
    CHECK(pass == 0);
    CHECK(take(text).find("residual of degree 4") != std::string::npos);
    ca_spec_free(s);
}

TEST_CASE("task section")
{
    const char* spec = R"({"name": "h", "base": {"lattice_rank": 0},
        "fiber": {"rank": 2, "metric": [["0", "1"], ["1", "0"]]},
        "task": {"command": "betti", "degrees": 3, "page": 1}})";
    ca_spec* s = nullptr;
    REQUIRE(ca_spec_from_text(spec, &s) == CA_OK);
    ca_options o;
    ca_options_default(&o);
    const char* cmd = ca_spec_task(s, &o);
    REQUIRE(cmd);
    CHECK(std::string(cmd) == "betti");
    CHECK(o.max_degree == 3);
    CHECK(o.page == 1);
    CHECK(o.truncate == -1);
    char* json = nullptr;
    CHECK(ca_run(s, cmd, &o, nullptr, &json, nullptr) == CA_OK);
    CHECK(take(json).find("\"max_degree\": 3") != std::string::npos);
    ca_spec_free(s);

    REQUIRE(ca_spec_from_catalog("so3", &s) == CA_OK);
    CHECK(ca_spec_task(s, &o) == nullptr);
    ca_spec_free(s);
}

TEST_CASE("last error is per thread")
{
    ca_spec* s = nullptr;
    CHECK(ca_spec_from_catalog("nosuch", &s) == CA_ERR_INPUT);
    std::string other = "unset";
    std::thread th([&] { other = ca_last_error(); });
    th.join();
    CHECK(other.empty());
    CHECK(std::string(ca_last_error()).find("nosuch") != std::string::npos);
}
