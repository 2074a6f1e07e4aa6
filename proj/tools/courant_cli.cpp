// courant: command-line front end over the C API.
#include "courant.h"

#include <CLI11.hpp>

#include <cstdio>
#include <future>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

namespace {

struct Outcome {
    int code = 0;   // 0 pass, 1 check failure, 2 input error
    std::string text, json, err;
};

std::string take(char* s)
{
    std::string r = s ? s : "";
    ca_string_free(s);
    return r;
}

std::vector<std::string> catalog_entries()
{
    char* s = nullptr;
    ca_catalog_names(&s);
    std::vector<std::string> out;
    std::istringstream in(take(s));
    for (std::string line; std::getline(in, line);)
        if (!line.empty() && line != "t4-broken") out.push_back(line);
    return out;
}

Outcome run_one(const std::string& source, bool is_file, std::string command, ca_options opt, bool task_opts)
{
    Outcome o;
    ca_spec* spec = nullptr;
    ca_status st = is_file ? ca_spec_from_file(source.c_str(), &spec) : ca_spec_from_catalog(source.c_str(), &spec);
    if (st != CA_OK) {
        o.code = 2;
        o.err = source + ": " + ca_last_error();
        return o;
    }
    std::unique_ptr<ca_spec, void (*)(ca_spec*)> guard(spec, ca_spec_free);
    ca_options file_opt = opt;
    const char* task = ca_spec_task(spec, &file_opt);
    if (task_opts) opt = file_opt;
    if (command.empty()) command = task ? task : "all";
    char *text = nullptr, *json = nullptr;
    int pass = 0;
    st = ca_run(spec, command.c_str(), &opt, &text, &json, &pass);
    o.text = take(text);
    o.json = take(json);
    if (st == CA_OK) return o;
    if (st == CA_ERR_CHECK) {
        o.code = 1;
        return o;
    }
    o.code = st == CA_ERR_INTERNAL ? 1 : 2;
    o.err = source + ": " + ca_last_error();
    return o;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Exact cohomology of regular Courant algebroids over tori"};
    app.require_subcommand(0, 1);

    std::vector<std::string> specs, catalogs;
    int max_degree = 6, page = 2, truncate = -1, samples = 200;
    std::string format = "table";
    bool list = false, dump = false;

    auto add_flags = [&](CLI::App* a) {
        a->add_option("--spec", specs, "spec file (JSON); repeatable");
        a->add_option("--catalog", catalogs, "catalog entry, e.g. so3 or t4-twisted(2); 'all' runs every entry");
        a->add_option("--max-degree", max_degree, "highest total degree")->check(CLI::NonNegativeNumber);
        a->add_option("--page", page, "last spectral page shown")->check(CLI::Range(0, 2));
        a->add_option("--truncate", truncate, "window radius where no conserved grading exists")
            ->check(CLI::NonNegativeNumber);
        a->add_option("--samples", samples, "random elements per contraction identity")->check(CLI::PositiveNumber);
        a->add_option("--format", format, "table or json")->check(CLI::IsMember({"table", "json", "json-like"}));
    };
    add_flags(&app);
    app.add_flag("--list", list, "print catalog entry names");
    app.add_flag("--dump-spec", dump, "print the resolved spec as JSON and exit");

    std::string command;
    const char* cmds[] = {"validate", "master", "contraction", "minimal", "betti", "pages", "compare", "all"};
    for (const char* c : cmds) {
        auto* sub = app.add_subcommand(c, std::string("run the ") + c + " pipeline");
        add_flags(sub);
        sub->callback([&command, c] { command = c; });
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int r = app.exit(e);
        return r == 0 ? 0 : 2;
    }

    if (list) {
        for (auto& n : catalog_entries()) std::cout << n << "\n";
        return 0;
    }

    std::vector<std::pair<std::string, bool>> sources;
    for (auto& c : catalogs) {
        if (c == "all")
            for (auto& n : catalog_entries()) sources.push_back({n, false});
        else
            sources.push_back({c, false});
    }
    for (auto& s : specs) sources.push_back({s, true});
    if (sources.empty()) {
        std::cerr << "error: give --spec PATH or --catalog NAME\n";
        return 2;
    }

    if (dump) {
        int code = 0;
        for (auto& [src, file] : sources) {
            ca_spec* spec = nullptr;
            ca_status st = file ? ca_spec_from_file(src.c_str(), &spec) : ca_spec_from_catalog(src.c_str(), &spec);
            if (st != CA_OK) {
                std::cerr << src << ": " << ca_last_error() << "\n";
                code = 2;
                continue;
            }
            char* j = nullptr;
            ca_spec_to_json(spec, &j);
            std::cout << take(j);
            ca_spec_free(spec);
        }
        return code;
    }

    ca_options opt;
    ca_options_default(&opt);
    opt.max_degree = max_degree;
    opt.page = page;
    opt.truncate = truncate;
    opt.samples = samples;
    // a task section only fills flags left at their defaults
    bool task_opts = max_degree == 6 && page == 2 && truncate == -1;

    // one pipeline per spec, reports merged in input order
    std::vector<std::future<Outcome>> jobs;
    for (auto& [src, file] : sources)
        jobs.push_back(std::async(std::launch::async, run_one, src, file, command, opt, task_opts));

    int code = 0;
    bool json = format != "table";
    if (json && sources.size() > 1) std::cout << "[\n";
    for (size_t i = 0; i < jobs.size(); ++i) {
        Outcome o = jobs[i].get();
        if (!o.err.empty()) std::cerr << "error: " << o.err << "\n";
        if (json) {
            std::string j = o.json.empty() ? "null\n" : o.json;
            if (sources.size() > 1 && i + 1 < jobs.size()) j.insert(j.size() - 1, ",");
            std::cout << j;
        } else {
            std::cout << o.text;
            if (i + 1 < jobs.size()) std::cout << "\n";
        }
        code = std::max(code, o.code);
    }
    if (json && sources.size() > 1) std::cout << "]\n";
    return code;
}
