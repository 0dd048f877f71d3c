#include "aha/bench/results_io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <map>
#include <set>
#include <sstream>

#include "aha/errors.hpp"

namespace aha::bench {

namespace {

std::ofstream open_out(const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    return out;
}

void write_row(std::ostream& out, const MetricsRecord& r, const std::string& run, double acc, double loss) {
    out << to_string(r.model) << ',' << to_string(r.task) << ',' << to_string(r.corruption) << ','
        << format_double(r.level) << ',' << r.seed << ',' << run << ',' << format_double(acc) << ','
        << format_double(loss) << '\n';
}

double parse_double(const std::string& s, const std::string& where) {
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size()) throw IngestionError(where + ": bad number '" + s + "'");
    return v;
}

}  // namespace

std::string format_double(double v) {
    if (std::isnan(v)) return "nan";
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

void write_results_csv(const std::vector<MetricsRecord>& records, const std::filesystem::path& path) {
    auto out = open_out(path);
    out << kCsvHeader << '\n';
    for (const auto& r : records) write_row(out, r, "mean", r.accuracy, r.recall_loss);
    if (!out) throw std::runtime_error("write failed: " + path.string());
}

void write_runs_csv(const std::vector<MetricsRecord>& records, const std::filesystem::path& path) {
    auto out = open_out(path);
    out << kCsvHeader << '\n';
    for (const auto& r : records)
        for (std::size_t i = 0; i < r.run_accuracy.size(); ++i)
            write_row(out, r, std::to_string(i), r.run_accuracy[i], r.run_recall_loss[i]);
    if (!out) throw std::runtime_error("write failed: " + path.string());
}

std::vector<ResultRow> read_results_csv(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IngestionError("cannot read " + path.string());
    std::string line;
    if (!std::getline(in, line) || line != kCsvHeader)
        throw IngestionError(path.string() + ": missing or wrong header");

    std::vector<ResultRow> rows;
    int lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        const std::string where = path.string() + ":" + std::to_string(lineno);
        std::vector<std::string> f;
        std::stringstream ss(line);
        std::string field;
        while (std::getline(ss, field, ',')) f.push_back(field);
        if (!line.empty() && line.back() == ',') f.emplace_back();
        if (f.size() != 8) throw IngestionError(where + ": expected 8 fields");

        ResultRow r;
        r.model = f[0];
        r.task = f[1];
        r.corruption = f[2];
        r.level = parse_double(f[3], where);
        const auto [ptr, ec] = std::from_chars(f[4].data(), f[4].data() + f[4].size(), r.seed);
        if (ec != std::errc() || ptr != f[4].data() + f[4].size())
            throw IngestionError(where + ": bad seed '" + f[4] + "'");
        r.run = f[5];
        r.accuracy = parse_double(f[6], where);
        r.recall_loss = parse_double(f[7], where);
        if (r.model.empty() || r.task.empty() || r.corruption.empty() || r.run.empty())
            throw IngestionError(where + ": empty field");
        rows.push_back(std::move(r));
    }
    return rows;
}

Summary summarise(const std::vector<double>& values) {
    constexpr double nan = std::numeric_limits<double>::quiet_NaN();
    if (values.empty() || std::any_of(values.begin(), values.end(), [](double v) { return std::isnan(v); }))
        return {nan, nan, nan, nan};
    Summary s;
    double sum = 0.0;
    for (double v : values) sum += v;
    s.mean = sum / static_cast<double>(values.size());
    double var = 0.0;
    for (double v : values) var += (v - s.mean) * (v - s.mean);
    s.std = std::sqrt(var / static_cast<double>(values.size()));
    s.min = *std::min_element(values.begin(), values.end());
    s.max = *std::max_element(values.begin(), values.end());
    // Rounding in the sum can leave the mean a hair outside [min, max].
    s.mean = std::clamp(s.mean, s.min, s.max);
    return s;
}

std::vector<PlotPoint> plot_points(const std::vector<ResultRow>& rows, const std::string& task,
                                   const std::string& corruption) {
    std::map<std::pair<std::string, double>, std::pair<std::vector<double>, std::vector<double>>> groups;
    for (const auto& r : rows) {
        if (r.run != "mean" || r.task != task || r.corruption != corruption) continue;
        auto& g = groups[{r.model, r.level}];
        g.first.push_back(r.accuracy);
        g.second.push_back(r.recall_loss);
    }
    std::vector<PlotPoint> out;
    for (const auto& [key, values] : groups) {
        PlotPoint p;
        p.model = key.first;
        p.level = key.second;
        p.seeds = static_cast<int>(values.first.size());
        p.accuracy = summarise(values.first);
        p.recall_loss = summarise(values.second);
        out.push_back(std::move(p));
    }
    return out;
}

std::vector<std::filesystem::path> export_plots(const std::vector<ResultRow>& rows,
                                                const std::filesystem::path& out_dir) {
    std::set<std::pair<std::string, std::string>> curves;
    for (const auto& r : rows)
        if (r.run == "mean") curves.insert({r.task, r.corruption});
    if (curves.empty()) throw IngestionError("no per-cell mean rows to plot");

    std::filesystem::create_directories(out_dir);
    std::vector<std::filesystem::path> written;
    for (const auto& [task, corruption] : curves) {
        const auto path = out_dir / ("plot_" + task + "_" + corruption + ".tsv");
        auto out = open_out(path);
        out << "model\tlevel\tseeds\taccuracy_mean\taccuracy_std\taccuracy_min\taccuracy_max"
               "\trecall_loss_mean\trecall_loss_std\trecall_loss_min\trecall_loss_max\n";
        for (const auto& p : plot_points(rows, task, corruption)) {
            out << p.model << '\t' << format_double(p.level) << '\t' << p.seeds;
            for (const Summary& s : {p.accuracy, p.recall_loss})
                out << '\t' << format_double(s.mean) << '\t' << format_double(s.std) << '\t' << format_double(s.min)
                    << '\t' << format_double(s.max);
            out << '\n';
        }
        if (!out) throw std::runtime_error("write failed: " + path.string());
        written.push_back(path);
    }
    return written;
}

}  // namespace aha::bench
