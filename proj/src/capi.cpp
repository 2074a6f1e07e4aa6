#include "courant.h"
#include "pipeline.hpp"

#include <cstdlib>
#include <cstring>
#include <fstream>
#include <sstream>
#include <string>

struct ca_spec {
    ca::CourantSpec spec;
    ca::TaskSection task;
};

namespace {

thread_local std::string last_error;

char* dup(const std::string& s)
{
    char* p = static_cast<char*>(std::malloc(s.size() + 1));
    std::memcpy(p, s.c_str(), s.size() + 1);
    return p;
}

ca_status fail(ca_status st, const std::string& msg)
{
    last_error = msg;
    return st;
}

template <class F>
ca_status load(ca_spec** out, F f)
{
    if (!out) return fail(CA_ERR_ARG, "null output pointer");
    *out = nullptr;
    try {
        *out = new ca_spec(f());
        last_error.clear();
        return CA_OK;
    } catch (const ca::SpecError& e) {
        return fail(CA_ERR_INPUT, e.what());
    } catch (const std::exception& e) {
        return fail(CA_ERR_INTERNAL, e.what());
    }
}

} // namespace

extern "C" {

void ca_options_default(ca_options* opt)
{
    if (!opt) return;
    ca::RunOptions d;
    opt->max_degree = d.max_degree;
    opt->page = d.page;
    opt->truncate = d.truncate;
    opt->samples = d.samples;
}

ca_status ca_spec_from_catalog(const char* name, ca_spec** out)
{
    if (!name) return fail(CA_ERR_ARG, "null name");
    return load(out, [&] { return ca_spec{ca::catalog(name), {}}; });
}

ca_status ca_spec_from_file(const char* path, ca_spec** out)
{
    if (!path) return fail(CA_ERR_ARG, "null path");
    return load(out, [&] {
        std::ifstream in(path);
        if (!in) throw ca::SpecError(std::string("cannot open ") + path);
        std::stringstream ss;
        ss << in.rdbuf();
        return ca_spec{ca::load_spec_text(ss.str()), ca::load_task_text(ss.str())};
    });
}

ca_status ca_spec_from_text(const char* text, ca_spec** out)
{
    if (!text) return fail(CA_ERR_ARG, "null text");
    return load(out, [&] { return ca_spec{ca::load_spec_text(text), ca::load_task_text(text)}; });
}

ca_status ca_spec_to_json(const ca_spec* spec, char** out)
{
    if (!spec || !out) return fail(CA_ERR_ARG, "null argument");
    try {
        *out = dup(ca::emit_spec(spec->spec));
        return CA_OK;
    } catch (const std::exception& e) {
        return fail(CA_ERR_INTERNAL, e.what());
    }
}

const char* ca_spec_name(const ca_spec* spec) { return spec ? spec->spec.name.c_str() : ""; }

void ca_spec_free(ca_spec* spec) { delete spec; }

const char* ca_spec_task(const ca_spec* spec, ca_options* opt)
{
    if (!spec) return nullptr;
    auto& t = spec->task;
    if (opt) {
        if (t.degrees) opt->max_degree = *t.degrees;
        if (t.page) opt->page = *t.page;
        if (t.truncation) opt->truncate = *t.truncation;
    }
    return t.command ? t.command->c_str() : nullptr;
}

ca_status ca_run(const ca_spec* spec, const char* command, const ca_options* opt, char** text,
                 char** json, int* all_pass)
{
    if (text) *text = nullptr;
    if (json) *json = nullptr;
    if (!spec || !command) return fail(CA_ERR_ARG, "null argument");
    ca::RunOptions o;
    if (opt) {
        o.max_degree = opt->max_degree;
        o.page = opt->page;
        o.truncate = opt->truncate;
        o.samples = opt->samples;
    }
    if (o.max_degree < 0 || o.page < 0 || o.page > 2 || o.samples < 1)
        return fail(CA_ERR_ARG, "option out of range");
    try {
        auto r = ca::run(command, spec->spec, o);
        if (text) *text = dup(r.text);
        if (json) *json = dup(r.json);
        if (all_pass) *all_pass = r.pass;
        if (!r.pass) return fail(CA_ERR_CHECK, "some checks failed");
        last_error.clear();
        return CA_OK;
    } catch (const std::invalid_argument& e) {
        return fail(CA_ERR_ARG, e.what());
    } catch (const std::exception& e) {
        return fail(CA_ERR_INTERNAL, e.what());
    }
}

ca_status ca_catalog_names(char** out)
{
    if (!out) return fail(CA_ERR_ARG, "null output pointer");
    std::string s;
    for (auto& n : ca::catalog_all_names()) s += n + "\n";
    *out = dup(s);
    return CA_OK;
}

const char* ca_last_error(void) { return last_error.c_str(); }

void ca_string_free(char* s) { std::free(s); }

} // extern "C"
