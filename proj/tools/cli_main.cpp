// Command-line front end: JSON in, JSON/SVG/text out, deterministic for
// fixed (input, flags). Exit codes: 0 ok, 1 input error, 2 domain error,
// 3 internal limit.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "coniclines/json_io.hpp"
#include "coniclines/svg_render.hpp"

namespace cl = coniclines;
using cl::json;

namespace {

struct Options {
    int g = 0;
    long seed = 0;
    std::string input;   // empty = stdin
    std::string output;  // empty = stdout
    std::string format = "json";
    std::string viewport; // render only: "xmin,ymin,xmax,ymax"
};

std::string read_input(const Options& opt) {
    if (opt.input.empty() || opt.input == "-") {
        std::ostringstream ss;
        ss << std::cin.rdbuf();
        return ss.str();
    }
    std::ifstream f(opt.input);
    if (!f)
        cl::fail(cl::ErrorCode::invalid_argument, "cannot open input file: " + opt.input);
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

void write_output(const Options& opt, const std::string& text) {
    if (opt.output.empty() || opt.output == "-") {
        std::cout << text;
        return;
    }
    std::ofstream f(opt.output, std::ios::binary);
    if (!f)
        cl::fail(cl::ErrorCode::invalid_argument, "cannot open output file: " + opt.output);
    f << text;
}

json parse_json(const std::string& text) {
    json j = json::parse(text, nullptr, false);
    if (j.is_discarded())
        cl::fail(cl::ErrorCode::invalid_argument, "malformed JSON input");
    return j;
}

cl::Weight expected_total(const Options& opt) {
    return 2 * static_cast<cl::Weight>(opt.g) + 2;
}

std::string dump(const json& j) {
    return j.dump(2) + "\n";
}

std::string config_text(const cl::LineConfig& r) {
    std::ostringstream os;
    os << "configuration with " << r.distinct_count() << " distinct lines, total multiplicity "
       << r.total() << "\n";
    for (const auto& [line, mult] : r.entries())
        os << "  " << line.str() << " x" << mult << "\n";
    return os.str();
}

int run(const std::string& cmd, const Options& opt) {
    if (opt.format == "svg" && cmd != "render")
        cl::fail(cl::ErrorCode::invalid_argument, "svg output is only available for render");
    if (cmd == "psi") {
        cl::MarkedConic k = cl::marked_conic_from_json(parse_json(read_input(opt)));
        if (k.total_weight() != expected_total(opt))
            cl::fail(cl::ErrorCode::invalid_argument, "total weight must be 2g+2");
        cl::LineConfig r = cl::psi(k);
        write_output(opt, opt.format == "text" ? config_text(r) : dump(cl::line_config_to_json(r)));
    } else if (cmd == "stability") {
        cl::LineConfig r = cl::line_config_from_json(parse_json(read_input(opt)));
        cl::StabilityVerdict v = cl::config_verdict(r);
        if (opt.format == "text") {
            std::ostringstream os;
            os << cl::to_string(v.status) << " (mu " << cl::rational_to_string(v.mu)
               << " vs threshold " << cl::rational_to_string(v.threshold) << ")\n";
            write_output(opt, os.str());
        } else {
            write_output(opt, dump(cl::verdict_to_json(v)));
        }
    } else if (cmd == "reconstruct") {
        cl::LineConfig r = cl::line_config_from_json(parse_json(read_input(opt)));
        cl::MarkedConic k = cl::reconstruct(r, expected_total(opt));
        write_output(opt, dump(cl::marked_conic_to_json(k)));
    } else if (cmd == "oracle") {
        cl::LineConfig r = cl::line_config_from_json(parse_json(read_input(opt)));
        auto all = cl::oracle_reconstruct(r, expected_total(opt));
        json out = json::array();
        for (const auto& k : all)
            out.push_back(cl::marked_conic_to_json(k));
        write_output(opt, dump(out));
    } else if (cmd == "tree-central") {
        cl::PointedTree t = cl::tree_from_json(parse_json(read_input(opt)));
        if (!cl::check_stable_tree(t))
            cl::fail(cl::ErrorCode::invalid_argument, "tree is not stable");
        json out;
        if (auto v = cl::central_vertex(t)) {
            out = {{"central_vertex", *v}};
        } else {
            cl::Edge e = cl::central_edge(t);
            out = {{"central_edge", json::array({e.first, e.second})}};
        }
        write_output(opt, dump(out));
    } else if (cmd == "tree-parts") {
        cl::PointedTree t = cl::tree_from_json(parse_json(read_input(opt)));
        auto parts = cl::principal_parts(t, opt.g, static_cast<std::uint64_t>(opt.seed));
        write_output(opt, dump(cl::principal_parts_to_json(parts)));
    } else if (cmd == "fmap") {
        cl::PointedTree t = cl::tree_from_json(parse_json(read_input(opt)));
        auto b = cl::f_map(t, opt.g);
        write_output(opt, dump(cl::binary_form_to_json(b.form)));
    } else if (cmd == "beta") {
        cl::PointedTree t = cl::tree_from_json(parse_json(read_input(opt)));
        cl::LineConfig r = cl::beta(t, opt.g, static_cast<std::uint64_t>(opt.seed));
        write_output(opt, opt.format == "text" ? config_text(r) : dump(cl::line_config_to_json(r)));
    } else if (cmd == "alpha") {
        cl::LineConfig r = cl::line_config_from_json(parse_json(read_input(opt)));
        auto b = cl::alpha(r, opt.g);
        write_output(opt, dump(cl::binary_form_to_json(b.form)));
    } else if (cmd == "factorize") {
        cl::PointedTree t = cl::tree_from_json(parse_json(read_input(opt)));
        auto lhs = cl::alpha(cl::beta(t, opt.g, static_cast<std::uint64_t>(opt.seed)), opt.g);
        auto rhs = cl::f_map(t, opt.g);
        bool ok = cl::mobius_equivalent(lhs.form, rhs.form);
        json out = {{"holds", ok},
                    {"alpha_beta", cl::binary_form_to_json(lhs.form)},
                    {"f_map", cl::binary_form_to_json(rhs.form)}};
        write_output(opt, dump(out));
    } else if (cmd == "render") {
        cl::LineConfig r = cl::line_config_from_json(parse_json(read_input(opt)));
        std::optional<cl::Viewport> vp;
        if (!opt.viewport.empty()) {
            std::istringstream ss(opt.viewport);
            std::string part;
            std::vector<cl::Rational> vals;
            while (std::getline(ss, part, ','))
                vals.push_back(cl::rational_from_string(part));
            if (vals.size() != 4)
                cl::fail(cl::ErrorCode::invalid_argument, "viewport needs xmin,ymin,xmax,ymax");
            vp = cl::Viewport{vals[0], vals[1], vals[2], vals[3]};
        }
        write_output(opt, cl::render_svg(r, vp));
    } else {
        cl::fail(cl::ErrorCode::invalid_argument, "unknown subcommand");
    }
    return 0;
}

int exit_status(cl::ErrorCode code) {
    switch (code) {
    case cl::ErrorCode::genericity_exhausted:
        return 3;
    case cl::ErrorCode::invalid_argument:
        return 1;
    default:
        return 2;
    }
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"configurations of lines from weighted markings on plane conics"};
    app.require_subcommand(1);

    Options opt;
    const std::vector<std::string> commands = {
        "psi",         "stability", "reconstruct", "oracle", "tree-central", "tree-parts",
        "fmap",        "beta",      "alpha",       "factorize", "render"};
    const std::set<std::string> needs_g = {"psi", "reconstruct", "oracle", "tree-parts",
                                           "fmap", "beta", "alpha", "factorize"};

    std::vector<CLI::App*> subs;
    for (const auto& name : commands) {
        CLI::App* sub = app.add_subcommand(name);
        auto* gopt = sub->add_option("--g", opt.g, "genus (>= 3)")->check(CLI::Range(3, 64));
        if (needs_g.count(name))
            gopt->required();
        sub->add_option("--seed", opt.seed, "seed for deterministic sampling");
        sub->add_option("--input,-i", opt.input, "input path (default stdin)");
        sub->add_option("--output,-o", opt.output, "output path (default stdout)");
        sub->add_option("--format", opt.format, "json | svg | text")
            ->check(CLI::IsMember({"json", "svg", "text"}));
        if (name == "render")
            sub->add_option("--viewport", opt.viewport, "xmin,ymin,xmax,ymax (rationals)");
        subs.push_back(sub);
    }

    CLI11_PARSE(app, argc, argv);

    for (size_t i = 0; i < commands.size(); ++i) {
        if (!subs[i]->parsed())
            continue;
        try {
            return run(commands[i], opt);
        } catch (const cl::Error& e) {
            json err = {{"error", cl::to_string(e.code())}, {"message", e.what()}};
            std::cerr << err.dump() << "\n";
            return exit_status(e.code());
        } catch (const std::exception& e) {
            json err = {{"error", "internal"}, {"message", e.what()}};
            std::cerr << err.dump() << "\n";
            return 3;
        }
    }
    return 1;
}
