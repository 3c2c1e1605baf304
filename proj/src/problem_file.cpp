#include "problem_file.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

#include "errors.hpp"

namespace fracvar {
namespace {

struct ValueLoc {
    std::string text;
    std::size_t offset = 0;
    int line = 0;
    int column = 0;
};

std::string_view trim(std::string_view s, std::size_t& dropped_front) {
    dropped_front = 0;
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) {
        s.remove_prefix(1);
        ++dropped_front;
    }
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' ||
                          s.back() == '\r')) {
        s.remove_suffix(1);
    }
    return s;
}

double parse_number(const ValueLoc& v) {
    double out = 0.0;
    const char* end = v.text.data() + v.text.size();
    const auto [ptr, ec] = std::from_chars(v.text.data(), end, out);
    if (ec != std::errc() || ptr != end || !std::isfinite(out)) {
        throw ParseError("expected a number, got '" + v.text + "'", v.offset,
                         v.line, v.column);
    }
    return out;
}

int parse_count(const ValueLoc& v, int min_allowed) {
    int out = 0;
    const char* end = v.text.data() + v.text.size();
    const auto [ptr, ec] = std::from_chars(v.text.data(), end, out);
    if (ec != std::errc() || ptr != end || out < min_allowed) {
        throw ParseError("expected an integer >= " +
                             std::to_string(min_allowed) + ", got '" + v.text +
                             "'",
                         v.offset, v.line, v.column);
    }
    return out;
}

std::string format_real(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

}  // namespace

ProblemSpec parse_problem_text(const std::string& text) {
    std::map<std::string, ValueLoc, std::less<>> entries;
    std::size_t pos = 0;
    int line_no = 0;
    while (pos <= text.size()) {
        const std::size_t eol = text.find('\n', pos);
        const std::size_t end = eol == std::string::npos ? text.size() : eol;
        ++line_no;
        std::string_view line(text.data() + pos, end - pos);
        const std::size_t hash = line.find('#');
        if (hash != std::string_view::npos) line = line.substr(0, hash);
        std::size_t lead = 0;
        const std::string_view body = trim(line, lead);
        if (!body.empty()) {
            const std::size_t eq = body.find('=');
            if (eq == std::string_view::npos) {
                throw ParseError("expected 'key = value'", pos + lead,
                                 line_no, static_cast<int>(lead) + 1);
            }
            std::size_t key_lead = 0;
            const std::string key(trim(body.substr(0, eq), key_lead));
            std::size_t value_lead = 0;
            const std::string_view value =
                trim(body.substr(eq + 1), value_lead);
            const std::size_t value_off = lead + eq + 1 + value_lead;
            ValueLoc loc{std::string(value), pos + value_off, line_no,
                         static_cast<int>(value_off) + 1};
            if (key.empty()) {
                throw ParseError("empty key", pos + lead, line_no,
                                 static_cast<int>(lead) + 1);
            }
            if (!entries.emplace(key, std::move(loc)).second) {
                throw ParseError("duplicate key '" + key + "'", pos + lead,
                                 line_no, static_cast<int>(lead) + 1);
            }
        }
        if (eol == std::string::npos) break;
        pos = eol + 1;
    }

    static const char* const kKnown[] = {"a",          "b", "alpha",
                                         "y_a",        "y_b",
                                         "lagrangian", "solver",
                                         "m",          "quad_n"};
    for (const auto& [key, loc] : entries) {
        bool known = false;
        for (const char* k : kKnown) {
            if (key == k) known = true;
        }
        if (!known) {
            throw ParseError("unknown key '" + key + "'", loc.offset,
                             loc.line, loc.column);
        }
    }
    for (const char* required :
         {"a", "b", "alpha", "y_a", "y_b", "lagrangian"}) {
        if (!entries.contains(required)) {
            throw ParseError(std::string("missing required key '") + required +
                                 "'",
                             text.size(), 0, 0);
        }
    }

    ProblemSpec spec;
    spec.a = parse_number(entries.at("a"));
    spec.b = parse_number(entries.at("b"));
    spec.alpha = parse_number(entries.at("alpha"));
    spec.y_a = parse_number(entries.at("y_a"));
    spec.y_b = parse_number(entries.at("y_b"));
    spec.lagrangian_key = entries.at("lagrangian").text;
    if (const auto it = entries.find("solver"); it != entries.end()) {
        spec.solver = it->second.text;
        if (spec.solver != "auto" && spec.solver != "quadratic" &&
            spec.solver != "general") {
            throw ParseError(
                "solver must be 'auto', 'quadratic', or 'general'",
                it->second.offset, it->second.line, it->second.column);
        }
    }
    if (const auto it = entries.find("m"); it != entries.end()) {
        spec.m = parse_count(it->second, 0);
    }
    if (const auto it = entries.find("quad_n"); it != entries.end()) {
        spec.quad_n = parse_count(it->second, 0);
    }

    if (!(spec.a < spec.b)) {
        const ValueLoc& loc = entries.at("b");
        throw ParseError("interval needs a < b", loc.offset, loc.line,
                         loc.column);
    }
    if (!(spec.alpha > 0.0) || spec.alpha > 1.0) {
        const ValueLoc& loc = entries.at("alpha");
        throw ParseError("alpha must lie in (0, 1]", loc.offset, loc.line,
                         loc.column);
    }

    // Surface a bad lagrangian value now, located at the file position.
    const ValueLoc& lag = entries.at("lagrangian");
    try {
        make_lagrangian(spec.lagrangian_key);
    } catch (const ParseError& e) {
        throw ParseError(e.what(), lag.offset + e.offset, lag.line,
                         lag.column + static_cast<int>(e.offset));
    }
    return spec;
}

ProblemSpec load_problem_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError("cannot read '" + path + "'");
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    if (in.bad()) {
        throw IoError("error while reading '" + path + "'");
    }
    return parse_problem_text(buffer.str());
}

VariationalProblem make_problem(const ProblemSpec& spec) {
    return {Interval(spec.a, spec.b), FracOrder(spec.alpha), spec.y_a,
            spec.y_b, make_lagrangian(spec.lagrangian_key)};
}

std::string resolved_solver(const ProblemSpec& spec) {
    if (spec.solver != "auto") return spec.solver;
    return make_lagrangian(spec.lagrangian_key).quadratic_form().has_value()
               ? "quadratic"
               : "general";
}

SolveResult solve_spec(const ProblemSpec& spec) {
    const VariationalProblem prob = make_problem(spec);
    SolverSettings settings;
    settings.modes = spec.m;
    settings.quad_n = spec.quad_n;
    return resolved_solver(spec) == "general" ? solve_general(prob, settings)
                                              : solve_quadratic(prob, settings);
}

std::string format_result(const ProblemSpec& spec, const SolveResult& result) {
    std::ostringstream out;
    out << "# solved variational problem\n";
    out << "a = " << format_real(spec.a) << "\n";
    out << "b = " << format_real(spec.b) << "\n";
    out << "alpha = " << format_real(spec.alpha) << "\n";
    out << "y_a = " << format_real(spec.y_a) << "\n";
    out << "y_b = " << format_real(spec.y_b) << "\n";
    out << "lagrangian = " << spec.lagrangian_key << "\n";
    out << "solver = " << resolved_solver(spec) << "\n";
    out << "m = " << spec.m << "\n";
    out << "quad_n = " << spec.quad_n << "\n";
    out << "converged = " << (result.converged ? "true" : "false") << "\n";
    out << "iterations = " << result.iterations << "\n";
    out << "value = " << format_real(result.value) << "\n";
    out << "residual_k = " << format_real(result.residual.k_estimate) << "\n";
    out << "residual_max_deviation = "
        << format_real(result.residual.max_deviation) << "\n";
    out << "residual_constant = "
        << (result.residual.constant ? "true" : "false") << "\n";
    out << "coefficients = ";
    for (std::size_t i = 0; i < result.coefficients.size(); ++i) {
        if (i > 0) out << ",";
        out << format_real(result.coefficients[i]);
    }
    out << "\n";
    return out.str();
}

void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw IoError("cannot write '" + path + "'");
    }
    out << text;
    out.flush();
    if (!out) {
        throw IoError("error while writing '" + path + "'");
    }
}

}  // namespace fracvar
