#include "floodsim/report.hpp"

#include <charconv>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace floodsim {

namespace {

std::string optional_number(const std::optional<double>& v) { return v ? format_number(*v) : ""; }

void write_metrics(std::ostream& out, const MetricSet& m) {
    out << m.total_queries << ',' << format_number(m.success_rate) << ','
        << format_number(m.hits_per_query) << ',' << optional_number(m.hits_per_success) << ','
        << optional_number(m.avg_hops) << ',' << optional_number(m.avg_hops_all_hits) << ','
        << format_number(m.forwarded_per_query);
}

std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> fields;
    std::string field;
    std::istringstream in(line);
    while (std::getline(in, field, ',')) fields.push_back(field);
    if (!line.empty() && line.back() == ',') fields.emplace_back();
    return fields;
}

template <class T>
T parse_field(const std::string& text, std::size_t line_no) {
    T value{};
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || ptr != text.data() + text.size()) {
        throw std::invalid_argument("sweep csv line " + std::to_string(line_no) + ": bad field '" + text + "'");
    }
    return value;
}

std::optional<double> parse_optional(const std::string& text, std::size_t line_no) {
    if (text.empty()) return std::nullopt;
    return parse_field<double>(text, line_no);
}

}  // namespace

std::string format_number(double value) {
    if (std::isnan(value)) return "nan";
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
    if (ec != std::errc{}) throw std::runtime_error("number formatting failed");
    return std::string(buf, ptr);
}

void write_sweep_csv(std::ostream& out, const SweepTable& table, std::string_view run_id) {
    out << kSweepCsvHeader << '\n';
    for (const auto& row : table.rows()) {
        out << run_id << ',' << row.replication << ',' << row.ttl << ',';
        write_metrics(out, row.metrics);
        out << '\n';
    }
}

void write_local_csv(std::ostream& out, std::span<const LocalRow> rows, std::string_view run_id) {
    out << kLocalCsvHeader << '\n';
    for (const auto& row : rows) {
        out << run_id << ',' << row.local.node_id << ',' << row.replication << ',' << row.ttl << ',';
        if (row.local.metrics) {
            write_metrics(out, *row.local.metrics);
        } else {
            out << "0,,,,,,";
        }
        out << '\n';
    }
}

void write_trace_csv(std::ostream& out, std::span<const QueryOutcome> outcomes,
                     std::span<const Arrival> arrivals) {
    if (outcomes.size() != arrivals.size()) throw std::invalid_argument("trace needs one arrival per outcome");
    out << kTraceCsvHeader << '\n';
    for (std::size_t i = 0; i < outcomes.size(); ++i) {
        const auto& q = outcomes[i];
        out << q.query_id << ',' << format_number(arrivals[i].timestamp) << ',' << q.origin << ','
            << q.object_id << ',' << q.initial_ttl << ',' << (q.success() ? 1 : 0) << ','
            << q.hits.size() << ',';
        if (q.first_hit_hops) out << *q.first_hit_hops;
        out << ',' << q.forwarded_packets << '\n';
    }
}

SweepTable read_sweep_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line) || line != kSweepCsvHeader) {
        throw std::invalid_argument("sweep csv: unexpected header");
    }
    std::vector<SweepRow> rows;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        auto f = split_csv(line);
        if (f.size() != 10) throw std::invalid_argument("sweep csv line " + std::to_string(line_no) + ": expected 10 fields");
        SweepRow row;
        row.replication = parse_field<std::uint32_t>(f[1], line_no);
        row.ttl = parse_field<std::uint32_t>(f[2], line_no);
        auto& m = row.metrics;
        m.total_queries = parse_field<std::uint64_t>(f[3], line_no);
        m.success_rate = parse_field<double>(f[4], line_no);
        m.hits_per_query = parse_field<double>(f[5], line_no);
        m.hits_per_success = parse_optional(f[6], line_no);
        m.avg_hops = parse_optional(f[7], line_no);
        m.avg_hops_all_hits = parse_optional(f[8], line_no);
        m.forwarded_per_query = parse_field<double>(f[9], line_no);
        rows.push_back(row);
    }
    return SweepTable(std::move(rows));
}

std::string plot_file_name(PlotMetric metric) {
    switch (metric) {
        case PlotMetric::SuccessRate: return "success_rate.dat";
        case PlotMetric::HitsPerQuery: return "hits_per_query.dat";
        case PlotMetric::AvgHops: return "avg_hops.dat";
        case PlotMetric::ForwardedPerQuery: return "forwarded_per_query.dat";
    }
    throw std::invalid_argument("unknown plot metric");
}

void write_plot_data(std::ostream& out, const SweepTable& table, PlotMetric metric) {
    out << "# ttl";
    for (auto rp : table.replications()) out << " rp=" << rp;
    out << '\n';
    for (auto ttl : table.ttls()) {
        out << ttl;
        for (auto rp : table.replications()) {
            const auto& m = table.at(rp, ttl);
            double v = 0.0;
            switch (metric) {
                case PlotMetric::SuccessRate: v = m.success_rate; break;
                case PlotMetric::HitsPerQuery: v = m.hits_per_query; break;
                case PlotMetric::AvgHops: v = m.avg_hops.value_or(std::nan("")); break;
                case PlotMetric::ForwardedPerQuery: v = m.forwarded_per_query; break;
            }
            out << ' ' << format_number(v);
        }
        out << '\n';
    }
}

}  // namespace floodsim
