#include "platid/io.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace platid {

namespace fs = std::filesystem;

namespace {

[[noreturn]] void fail(const std::string& what) { throw std::runtime_error(what); }

std::string csv_quote(const std::string& s)
{
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (const char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

std::vector<std::string> split_line(const std::string& line)
{
    std::vector<std::string> fields;
    std::string field;
    for (const char c : line) {
        if (c == ',') {
            fields.push_back(field);
            field.clear();
        } else if (c != '\r') {
            field += c;
        }
    }
    fields.push_back(field);
    return fields;
}

double parse_number(const std::string& s, const std::string& where)
{
    try {
        std::size_t pos = 0;
        const double v = std::stod(s, &pos);
        if (pos != s.size()) throw std::invalid_argument("trailing characters");
        return v;
    } catch (const std::exception&) {
        fail(where + ": '" + s + "' is not a number");
    }
}

std::vector<std::vector<std::string>> read_csv(const fs::path& path, const std::string& header)
{
    std::ifstream in(path);
    if (!in) fail("cannot open '" + path.string() + "'");
    std::string line;
    if (!std::getline(in, line)) fail(path.string() + ": empty file");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != header) fail(path.string() + ": unexpected header '" + line + "'");
    std::vector<std::vector<std::string>> rows;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        rows.push_back(split_line(line));
    }
    if (rows.empty()) fail(path.string() + ": no data rows");
    return rows;
}

}  // namespace

std::string format_double(double v)
{
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[40];
    for (int precision = 15; precision <= 17; ++precision) {
        std::snprintf(buf, sizeof buf, "%.*g", precision, v);
        if (std::strtod(buf, nullptr) == v) break;
    }
    return buf;
}

void atomic_write_file(const fs::path& path, const std::string& content)
{
    if (path.has_parent_path()) fs::create_directories(path.parent_path());
    const fs::path tmp = path.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) fail("cannot write '" + tmp.string() + "'");
        out << content;
        if (!out.flush()) fail("write failed for '" + tmp.string() + "'");
    }
    fs::rename(tmp, path);
}

namespace {

constexpr const char* kJobsHeader =
    "j11,j22,j33,j44,j12,j13,j14,j24,j34,"
    "m11,m12,m13,m14,m21,m22,m23,m24,m31,m32,m33,m34,m41,m42,m43,m44";
constexpr const char* kTargetHeader = "i,t,xi,eta,is_turn";

}  // namespace

void write_products(const InterceptedPaths& paths, const Fim& j_obs, const TargetState& target,
                    const TimeGrid& grid)
{
    const FimVec9 v = pack9(j_obs);
    std::ostringstream jobs;
    jobs << kJobsHeader << "\n";
    for (int i = 0; i < 9; ++i) jobs << format_double(v[i]) << ",";
    for (int r = 0; r < 4; ++r) {
        for (int c = 0; c < 4; ++c) {
            jobs << format_double(j_obs.m(r, c));
            if (r != 3 || c != 3) jobs << ",";
        }
    }
    jobs << "\n";
    atomic_write_file(paths.jobs, jobs.str());

    std::ostringstream tgt;
    tgt << kTargetHeader << "\n";
    for (int i = 1; i <= grid.size(); ++i) {
        const Vec2 p = target_position(target, grid, i);
        tgt << i << "," << format_double(grid.time(i)) << "," << format_double(p.x()) << ","
            << format_double(p.y()) << "," << (grid.has_turn() && i == grid.turn_index() ? 1 : 0)
            << "\n";
    }
    atomic_write_file(paths.target, tgt.str());
}

LoadedProducts read_products(const InterceptedPaths& paths)
{
    const auto jobs_rows = read_csv(paths.jobs, kJobsHeader);
    if (jobs_rows.size() != 1 || jobs_rows[0].size() != 25) {
        fail(paths.jobs.string() + ": expected a single row of 25 fields");
    }
    FimVec9 v;
    for (int i = 0; i < 9; ++i) v[i] = parse_number(jobs_rows[0][i], paths.jobs.string());
    Fim full;
    for (int r = 0; r < 4; ++r) {
        for (int c = 0; c < 4; ++c) {
            full.m(r, c) = parse_number(jobs_rows[0][9 + 4 * r + c], paths.jobs.string());
        }
    }
    validate_fim(full);
    const FimVec9 packed = pack9(full);
    for (int i = 0; i < 9; ++i) {
        const double scale = std::max(std::abs(packed[i]), std::abs(v[i]));
        if (std::abs(packed[i] - v[i]) > 1e-9 * scale) {
            fail(paths.jobs.string() + ": 9-vector is inconsistent with the full matrix");
        }
    }

    const auto target_rows = read_csv(paths.target, kTargetHeader);
    std::vector<double> times;
    std::vector<Vec2> positions;
    int turn = -1;
    for (std::size_t r = 0; r < target_rows.size(); ++r) {
        const auto& row = target_rows[r];
        if (row.size() != 5) fail(paths.target.string() + ": expected 5 fields per row");
        const std::string where = paths.target.string();
        const int i = static_cast<int>(parse_number(row[0], where));
        if (i != static_cast<int>(r) + 1) fail(where + ": sample indices must be 1..n in order");
        times.push_back(parse_number(row[1], where));
        positions.emplace_back(parse_number(row[2], where), parse_number(row[3], where));
        const double is_turn = parse_number(row[4], where);
        if (is_turn != 0.0) {
            if (turn != -1) fail(where + ": multiple turn samples flagged");
            turn = i;
        }
    }
    if (turn == -1) fail(paths.target.string() + ": no turn sample flagged");

    TimeGrid grid(times, turn);
    const TargetState target{positions.front(), positions.back()};
    return LoadedProducts{ObservedProducts::from_fim(full, target, grid), full};
}

void write_result_csv(const fs::path& path, const IdentificationResult& result, bool has_truth)
{
    std::ostringstream out;
    out << "xi,eta,speed,phi1,phi2,alpha_theta_hat,g_best,zone,rspe\n";
    const ConstrainedPlatformState& s = result.best_state;
    out << format_double(s.xi) << "," << format_double(s.eta) << "," << format_double(s.s) << ","
        << format_double(s.phi1) << "," << format_double(s.phi2) << ","
        << format_double(result.alpha_theta_hat) << "," << format_double(result.g_best) << ","
        << result.zone << "," << (has_truth ? format_double(result.rspe) : std::string()) << "\n";
    atomic_write_file(path, out.str());
}

void write_trajectory_csv(const fs::path& path, const IdentificationResult& result,
                          const ObservedProducts& obs, const ConstrainedPlatformState* truth)
{
    const PlatformStateFree est = free_from_constrained(result.best_state);
    const PlatformStateFree tru =
        truth != nullptr ? free_from_constrained(*truth) : PlatformStateFree{};
    std::ostringstream out;
    out << "t,xi_true,eta_true,xi_est,eta_est\n";
    for (int i = 1; i <= obs.grid.size(); ++i) {
        const Vec2 pe = platform_position(est, obs.grid, i);
        out << format_double(obs.grid.time(i)) << ",";
        if (truth != nullptr) {
            const Vec2 pt = platform_position(tru, obs.grid, i);
            out << format_double(pt.x()) << "," << format_double(pt.y());
        } else {
            out << ",";
        }
        out << "," << format_double(pe.x()) << "," << format_double(pe.y()) << "\n";
    }
    atomic_write_file(path, out.str());
}

void write_rspe_trace_csv(const fs::path& path, const IdentificationResult& result, bool has_truth)
{
    std::ostringstream out;
    out << "zone,iteration,g,rspe\n";
    for (const ZoneOutcome& z : result.zones) {
        if (!z.ok) continue;
        for (const ZoneTracePoint& tp : z.trace) {
            out << z.zone << "," << tp.iteration << "," << format_double(tp.g) << ","
                << (has_truth ? format_double(tp.rspe) : std::string()) << "\n";
        }
    }
    atomic_write_file(path, out.str());
}

void write_guesses_csv(const fs::path& path, const GuessSet& guesses)
{
    std::ostringstream out;
    out << "zone,alpha_theta,grid_index,pair_index,g_value,r1_hat,rn_hat,"
           "xi1,eta1,xik,etak,xin,etan\n";
    for (const ZoneGuess& z : guesses.zones) {
        out << z.zone << "," << format_double(z.alpha_theta) << "," << z.grid_index << ","
            << z.pair_index << "," << format_double(z.g_value) << "," << format_double(z.r1_hat)
            << "," << format_double(z.rn_hat) << "," << format_double(z.waypoints.p1.x()) << ","
            << format_double(z.waypoints.p1.y()) << "," << format_double(z.waypoints.pk.x()) << ","
            << format_double(z.waypoints.pk.y()) << "," << format_double(z.waypoints.pn.x()) << ","
            << format_double(z.waypoints.pn.y()) << "\n";
    }
    atomic_write_file(path, out.str());
}

void write_sensitivity_csv(const fs::path& path, const std::vector<TkSweepEntry>& entries,
                           bool has_truth)
{
    std::ostringstream out;
    out << "k,rspe,g_best,error\n";
    for (const TkSweepEntry& e : entries) {
        out << e.k << ",";
        if (e.ok && has_truth) out << format_double(e.rspe);
        out << ",";
        if (e.ok) out << format_double(e.g_best);
        out << "," << csv_quote(e.error) << "\n";
    }
    atomic_write_file(path, out.str());
}

}  // namespace platid
