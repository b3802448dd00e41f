// perfkit: analytic performance evaluation toolkit.
//
// Subcommands: amdahl, bench, oplaws, solred, cluster, forecast, ingest,
// whatif. Exit codes: 0 success, 1 usage error, 2 data error.

#include <fstream>
#include <iostream>
#include <optional>
#include <cmath>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "perfkit/amdahl.hpp"
#include "perfkit/benchcmp.hpp"
#include "perfkit/errors.hpp"
#include "perfkit/forecast.hpp"
#include "perfkit/ingest.hpp"
#include "perfkit/modelio.hpp"
#include "perfkit/opanalysis.hpp"
#include "perfkit/qnsolver.hpp"
#include "perfkit/report.hpp"
#include "perfkit/workload.hpp"

namespace {

using namespace perfkit;

std::string read_all(const std::string& path) {
    if (path.empty() || path == "-") {
        std::ostringstream os;
        os << std::cin.rdbuf();
        return os.str();
    }
    std::ifstream in(path);
    if (!in) throw parse_error("cannot open " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : line) {
        if (c == ',') {
            out.push_back(cur);
            cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    out.push_back(cur);
    for (auto& s : out) {
        while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.erase(s.begin());
        while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.pop_back();
    }
    return out;
}

double to_number(const std::string& tok, std::size_t lineno) {
    try {
        std::size_t used = 0;
        const double v = std::stod(tok, &used);
        if (used != tok.size()) throw std::invalid_argument(tok);
        return v;
    } catch (...) {
        throw parse_error("not a number: '" + tok + "'", lineno);
    }
}

// ---- amdahl ----

int run_amdahl(const std::vector<double>& fs, const std::vector<double>& ks,
               const std::string& solve, std::optional<double> target,
               std::optional<double> time, std::optional<double> f_after) {
    if (solve == "A") {
        amdahl::ImprovementSet set;
        if (fs.size() != ks.size()) throw domain_error("--f and --k must pair up");
        for (std::size_t i = 0; i < fs.size(); ++i) set.items.push_back({fs[i], ks[i]});
        std::cout << amdahl::speedup_multi(set) << "\n";
    } else if (solve == "f") {
        if (!target || ks.empty()) throw domain_error("--solve f needs --A and --k");
        std::cout << amdahl::fraction_for(*target, ks[0]) << "\n";
    } else if (solve == "k") {
        if (!target || fs.empty()) throw domain_error("--solve k needs --A and --f");
        std::cout << amdahl::factor_for(*target, fs[0]) << "\n";
    } else if (solve == "T") {
        if (!time) throw domain_error("--solve T needs --T");
        amdahl::ImprovementSet set;
        if (fs.size() != ks.size()) throw domain_error("--f and --k must pair up");
        for (std::size_t i = 0; i < fs.size(); ++i) set.items.push_back({fs[i], ks[i]});
        std::cout << amdahl::improved_time(*time, set) << "\n";
    } else if (solve == "fbefore") {
        if (!f_after || ks.empty()) throw domain_error("--solve fbefore needs --f-after and --k");
        std::cout << amdahl::fraction_before_from_after(*f_after, ks[0]) << "\n";
    } else {
        throw domain_error("--solve must be one of A, f, k, T, fbefore");
    }
    return 0;
}

// ---- bench ----

benchcmp::MeasurementTable read_table(const std::string& text) {
    benchcmp::MeasurementTable t;
    std::istringstream is(text);
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        auto cells = split_csv_line(line);
        if (t.systems.empty()) {
            t.systems.assign(cells.begin() + 1, cells.end());
            continue;
        }
        if (cells.size() != t.systems.size() + 1)
            throw parse_error("expected " + std::to_string(t.systems.size() + 1) + " cells", lineno);
        t.programs.push_back(cells[0]);
        std::vector<double> row;
        for (std::size_t i = 1; i < cells.size(); ++i) row.push_back(to_number(cells[i], lineno));
        t.values.push_back(std::move(row));
    }
    if (t.systems.empty() || t.values.empty()) throw parse_error("empty table");
    return t;
}

int run_bench(const std::string& input, const std::string& mean_kind,
              const std::string& normalize_ref, bool rates, double ci_alpha,
              const std::string& ci_pair, const std::string& spec_ref) {
    auto table = read_table(read_all(input));

    if (!normalize_ref.empty()) {
        table = benchcmp::normalize(table, normalize_ref,
                                    rates ? benchcmp::RatioOrientation::rate_ratio
                                          : benchcmp::RatioOrientation::time_ratio);
        std::cout << "program";
        for (const auto& s : table.systems) std::cout << "," << s;
        std::cout << "\n";
        for (std::size_t p = 0; p < table.programs.size(); ++p) {
            std::cout << table.programs[p];
            for (double v : table.values[p]) std::cout << "," << v;
            std::cout << "\n";
        }
    }
    if (!mean_kind.empty()) {
        benchcmp::MeanKind kind;
        if (mean_kind == "arithmetic") kind = benchcmp::MeanKind::arithmetic;
        else if (mean_kind == "harmonic") kind = benchcmp::MeanKind::harmonic;
        else if (mean_kind == "geometric") kind = benchcmp::MeanKind::geometric;
        else throw domain_error("--mean must be arithmetic, harmonic or geometric");
        for (std::size_t s = 0; s < table.systems.size(); ++s)
            std::cout << table.systems[s] << " " << benchcmp::mean(table.column(s), kind) << "\n";
    }
    if (!spec_ref.empty()) {
        const auto ref = table.column(table.system_index(spec_ref));
        for (std::size_t s = 0; s < table.systems.size(); ++s) {
            if (table.systems[s] == spec_ref) continue;
            const auto idx = benchcmp::spec_index(ref, table.column(s));
            std::cout << table.systems[s] << " " << idx.rounded << " (" << idx.value << ")\n";
        }
    }
    if (!ci_pair.empty()) {
        const auto colon = ci_pair.find(':');
        if (colon == std::string::npos) throw domain_error("--ci needs SYSA:SYSB");
        const auto a = table.column(table.system_index(ci_pair.substr(0, colon)));
        const auto b = table.column(table.system_index(ci_pair.substr(colon + 1)));
        const auto r = benchcmp::paired_confidence(benchcmp::paired_diffs(a, b), ci_alpha);
        std::cout << "mean " << r.mean_diff << " sd " << r.std_dev << " halfwidth " << r.half_width
                  << " interval [" << r.lo << ", " << r.hi << "] "
                  << (r.significant ? "significant" : "not significant") << "\n";
    }
    return 0;
}

// ---- oplaws ----

int run_oplaws(const std::string& law, const std::vector<double>& args) {
    auto need = [&](std::size_t n) {
        if (args.size() != n)
            throw domain_error("law '" + law + "' needs " + std::to_string(n) + " values");
    };
    if (law == "little-n") {        // X R
        need(2);
        std::cout << opanalysis::little_n(args[0], args[1]) << "\n";
    } else if (law == "little-r") { // N X
        need(2);
        std::cout << opanalysis::little_r(args[0], args[1]) << "\n";
    } else if (law == "little-x") { // N R
        need(2);
        std::cout << opanalysis::little_x(args[0], args[1]) << "\n";
    } else if (law == "utilization") {  // X S
        need(2);
        std::cout << args[0] * args[1] << "\n";
    } else if (law == "forced") {   // X0 V
        need(2);
        std::cout << opanalysis::forced_flow(args[0], args[1]) << "\n";
    } else if (law == "system-x") { // Xi V
        need(2);
        std::cout << opanalysis::system_throughput(args[0], args[1]) << "\n";
    } else if (law == "interactive") {  // N X Z
        need(3);
        const auto r = opanalysis::interactive_response_time(args[0], args[1], args[2]);
        std::cout << r.response_time << (r.feasible ? "" : " (infeasible)") << "\n";
    } else if (law == "derive") {   // T A C B
        need(4);
        const auto m = opanalysis::derive_metrics({args[0], args[1], args[2], args[3]});
        std::cout << "lambda " << m.arrival_rate << " X " << m.throughput << " U " << m.utilization
                  << " S ";
        if (m.service_time)
            std::cout << *m.service_time;
        else
            std::cout << "undefined";
        std::cout << " flow-balance-error " << opanalysis::flow_balance_error(args[1], args[2])
                  << "\n";
    } else if (law == "cache") {    // controller p_hit miss
        need(3);
        std::cout << opanalysis::cached_service_time(args[0], args[1], args[2]) << "\n";
    } else {
        throw domain_error(
            "unknown law; use little-n|little-r|little-x|utilization|forced|system-x|interactive|"
            "derive|cache");
    }
    return 0;
}

// ---- solred ----

modelio::Model parse_solred_args(const std::vector<std::string>& args, std::size_t& used) {
    if (args.empty()) throw domain_error("solred needs arguments: 0 lambda K V S ... | 1 N Z K V S ...");
    std::size_t at = 0;
    auto next = [&]() -> double {
        if (at >= args.size()) throw domain_error("truncated solred arguments");
        return to_number(args[at++], 0);
    };
    const double kind = next();
    if (kind != 0.0 && kind != 1.0) throw domain_error("network kind must be 0 (open) or 1 (closed)");

    double lambda = 0.0;
    long population = 0;
    double think = 0.0;
    if (kind == 0.0) {
        lambda = next();
        if (lambda < 0.0) throw domain_error("arrival rate must be >= 0");
    } else {
        const double n = next();
        if (n < 0.0 || n != std::floor(n)) throw domain_error("population must be a nonnegative integer");
        population = static_cast<long>(n);
        think = next();
        if (think < 0.0) throw domain_error("think time must be >= 0");
    }
    const double count_raw = next();
    if (count_raw < 1.0 || count_raw != std::floor(count_raw))
        throw domain_error("station count must be a positive integer");
    const auto count = static_cast<std::size_t>(count_raw);
    std::vector<qnsolver::Station> stations;
    for (std::size_t i = 0; i < count; ++i) {
        qnsolver::Station s;
        s.name = "st" + std::to_string(i + 1);
        s.visits = next();
        s.service = next();
        stations.push_back(std::move(s));
    }
    used = at;
    if (kind == 0.0) return qnsolver::OpenModel{lambda, std::move(stations)};
    return qnsolver::ClosedModel{population, think, std::move(stations)};
}

int run_solred(const std::vector<std::string>& args, const std::string& model_path,
               bool with_trace, const std::string& output) {
    modelio::Model model;
    std::vector<double> sweep;
    if (!model_path.empty()) {
        model = modelio::read_model_file(model_path);
        for (const auto& a : args) sweep.push_back(to_number(a, 0));
    } else {
        std::size_t used = 0;
        model = parse_solred_args(args, used);
        for (std::size_t i = used; i < args.size(); ++i) sweep.push_back(to_number(args[i], 0));
    }

    if (!sweep.empty()) {
        if (sweep.size() != 3) throw domain_error("sweep needs exactly: start end step");
        const auto format =
            output == "csv" ? report::SweepFormat::csv : report::SweepFormat::gnuplot;
        std::cout << report::sweep_report(model, sweep[0], sweep[1], sweep[2], format);
        return 0;
    }
    if (with_trace) {
        if (const auto* closed = std::get_if<qnsolver::ClosedModel>(&model))
            std::cout << report::mva_trace_table(*closed) << "\n";
    }
    std::cout << report::solred_report(model);
    return 0;
}

// ---- cluster ----

workload::Dataset read_dataset(const std::string& text) {
    workload::Dataset data;
    std::istringstream is(text);
    std::string line;
    std::size_t lineno = 0;
    bool maybe_header = true;
    while (std::getline(is, line)) {
        ++lineno;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        auto cells = split_csv_line(line);
        if (cells.size() < 2) throw parse_error("need 'label,v1[,v2...]'", lineno);
        if (maybe_header) {
            maybe_header = false;
            bool numeric = true;
            for (std::size_t i = 1; i < cells.size() && numeric; ++i)
                try {
                    to_number(cells[i], lineno);
                } catch (...) {
                    numeric = false;
                }
            if (!numeric) continue;  // header row
        }
        workload::Component c;
        c.label = cells[0];
        for (std::size_t i = 1; i < cells.size(); ++i) c.params.push_back(to_number(cells[i], lineno));
        data.push_back(std::move(c));
    }
    if (data.empty()) throw parse_error("empty dataset");
    return data;
}

int run_cluster(const std::string& input, const std::string& scale_kind,
                const std::string& metric_name, std::size_t k, std::optional<double> max_distance,
                bool gnuplot, bool cbmg) {
    const auto text = read_all(input);

    if (cbmg) {
        workload::Cbmg model;
        std::istringstream is(text);
        std::string line;
        std::size_t lineno = 0;
        while (std::getline(is, line)) {
            ++lineno;
            if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
            auto cells = split_csv_line(line);
            std::vector<double> row;
            for (const auto& c : cells) row.push_back(to_number(c, lineno));
            model.transitions.push_back(std::move(row));
        }
        const auto rates = workload::cbmg_visit_rates(model);
        for (std::size_t i = 0; i < rates.visits.size(); ++i)
            std::cout << "V" << i + 2 << " " << rates.visits[i] << "\n";
        std::cout << "session-length " << rates.session_length << "\n";
        return 0;
    }

    auto data = read_dataset(text);
    if (scale_kind == "zscore")
        data = workload::scale(data, workload::ZScoreScaling{});
    else if (scale_kind == "log")
        data = workload::scale(data, workload::LogScaling{});
    else if (scale_kind != "none" && !scale_kind.empty())
        throw domain_error("--scale must be zscore, log or none");

    workload::Metric metric = workload::Metric::euclidean;
    if (metric_name == "chi2") metric = workload::Metric::chi2;
    else if (metric_name == "weighted") metric = workload::Metric::weighted;
    else if (metric_name != "euclidean" && !metric_name.empty())
        throw domain_error("--metric must be euclidean, weighted or chi2");

    const auto dendrogram = workload::mst_cluster(data, metric);
    if (gnuplot) {
        // Merge heights against merge index, one point per merge.
        std::cout << "# merge  height\n";
        for (std::size_t i = 0; i < dendrogram.merges.size(); ++i)
            std::cout << i + 1 << "  " << dendrogram.merges[i].distance << "\n";
        return 0;
    }

    std::cout << "# left right distance centroid...\n";
    for (const auto& m : dendrogram.merges) {
        std::cout << m.left << " " << m.right << " " << m.distance;
        for (double c : m.centroid) std::cout << " " << c;
        std::cout << "\n";
    }
    const auto clusters =
        max_distance ? dendrogram.cut_height(*max_distance, data) : dendrogram.cut_k(k, data);
    std::cout << "# clusters: " << clusters.size() << "\n";
    for (const auto& c : clusters) {
        std::cout << "cluster";
        for (std::size_t m : c.members) std::cout << " " << data[m].label;
        std::cout << " | centroid";
        for (double v : c.centroid) std::cout << " " << v;
        std::cout << "\n";
    }
    return 0;
}

// ---- forecast ----

int run_forecast(const std::string& input, const std::string& method,
                 std::optional<double> predict_x) {
    forecast::TimeSeries series;
    std::istringstream is(read_all(input));
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        auto cells = split_csv_line(line);
        if (cells.size() == 1)
            series.points.push_back(
                {static_cast<double>(series.points.size() + 1), to_number(cells[0], lineno)});
        else if (cells.size() == 2)
            series.points.push_back({to_number(cells[0], lineno), to_number(cells[1], lineno)});
        else
            throw parse_error("expected one or two columns", lineno);
    }
    series.validate();
    if (series.points.empty()) throw parse_error("empty series");

    if (method.rfind("ols", 0) == 0) {
        const auto fit = forecast::linear_regression(series);
        std::cout << "# a " << fit.intercept << " b " << fit.slope << " mse " << fit.mse << "\n";
        for (const auto& p : series.points)
            std::cout << p.x << "  " << forecast::predict(fit, p.x) << "\n";
        if (predict_x) std::cout << "predict " << forecast::predict(fit, *predict_x) << "\n";
        return 0;
    }

    forecast::SmoothingConfig config;
    bool is_ma = false;
    std::size_t ma_n = 0;
    if (method.rfind("ma:", 0) == 0) {
        is_ma = true;
        ma_n = static_cast<std::size_t>(to_number(method.substr(3), 0));
    } else if (method.rfind("exp-var:", 0) == 0) {
        auto rest = method.substr(8);
        const auto colon = rest.find(':');
        forecast::VariableWeight vw;
        if (colon == std::string::npos) {
            vw.m = to_number(rest, 0);
        } else {
            vw.m = to_number(rest.substr(0, colon), 0);
            vw.start_weight = to_number(rest.substr(colon + 1), 0);
        }
        config = vw;
    } else if (method.rfind("exp:", 0) == 0) {
        config = forecast::FixedWeight{to_number(method.substr(4), 0)};
    } else if (method.rfind("tustin:", 0) == 0) {
        config = forecast::TustinWeight{to_number(method.substr(7), 0)};
    } else {
        throw domain_error("--method must be ols | ma:n | exp:a | exp-var:m[:start] | tustin:a");
    }

    if (is_ma) {
        std::cout << "forecast " << forecast::moving_average(series, ma_n) << "\n";
        return 0;
    }
    const auto result = forecast::exp_smoothing(series, config);
    for (std::size_t i = 0; i < result.trace.size(); ++i)
        std::cout << series.points[i].x << "  " << result.trace[i] << "\n";
    std::cout << "forecast " << result.forecast << "\n";
    return 0;
}

// ---- ingest ----

int run_ingest(const std::string& input, const std::string& kind, bool commas,
               const std::vector<std::string>& gprof_edits, const std::string& bins,
               double window, const std::string& model_out, const std::string& csv_out) {
    const auto text = read_all(input);

    if (kind == "vmstat") {
        const auto report = ingest::parse_vmstat(text, commas);
        for (const auto& rej : report.rejects)
            std::cerr << "reject line " << rej.line << ": " << rej.reason << "\n";
        const auto s = ingest::summarize(report.samples);
        std::cout << "samples " << s.count << "\n";
        std::cout << "r " << s.mean.r << "\nb " << s.mean.b << "\nsi " << s.mean.si << "\nso "
                  << s.mean.so << "\nbi " << s.mean.bi << "\nbo " << s.mean.bo << "\nus "
                  << s.mean.us << "\nsy " << s.mean.sy << "\nid " << s.mean.id << "\n";
        return report.rejects.empty() ? 0 : 2;
    }
    if (kind.rfind("sar-", 0) == 0) {
        ingest::SarKind sk;
        if (kind == "sar-u") sk = ingest::SarKind::cpu;
        else if (kind == "sar-d") sk = ingest::SarKind::disk;
        else if (kind == "sar-b") sk = ingest::SarKind::io;
        else throw domain_error("sar kind must be sar-u, sar-d or sar-b");
        const auto report = ingest::parse_sar(text, sk, commas);
        for (const auto& rej : report.rejects)
            std::cerr << "reject line " << rej.line << ": " << rej.reason << "\n";
        std::cout << ingest::emit_sar(report);
        return report.rejects.empty() ? 0 : 2;
    }
    if (kind == "gprof") {
        const auto profile = ingest::parse_gprof(text, commas);
        std::cout << "total " << profile.total_seconds() << "\n";
        if (!gprof_edits.empty()) {
            std::vector<ingest::GprofEdit> edits;
            for (const auto& e : gprof_edits) {
                // scale:name=k | calls:name=n | ms:name=v
                const auto colon = e.find(':');
                const auto eq = e.find('=');
                if (colon == std::string::npos || eq == std::string::npos || eq < colon)
                    throw domain_error("edit must look like scale:name=2 or calls:name=20");
                const auto op = e.substr(0, colon);
                const auto name = e.substr(colon + 1, eq - colon - 1);
                const double value = to_number(e.substr(eq + 1), 0);
                if (op == "scale") edits.push_back(ingest::ScaleProc{name, value});
                else if (op == "calls") edits.push_back(ingest::SetCalls{name, value});
                else if (op == "ms") edits.push_back(ingest::SetMsPerCall{name, value});
                else throw domain_error("edit op must be scale, calls or ms");
            }
            const auto result = ingest::gprof_what_if(profile, edits);
            std::cout << "new-total " << result.new_seconds << "\nspeedup " << result.speedup
                      << "\n";
        }
        return 0;
    }
    if (kind == "accesslog") {
        const auto log = ingest::parse_access_log(text);
        for (const auto& rej : log.rejects)
            std::cerr << "reject line " << rej.line << ": " << rej.reason << "\n";
        auto gets = ingest::filter_method(log.records, "GET");
        std::cout << "records " << log.records.size() << " get " << gets.size() << " rejects "
                  << log.rejects.size() << "\n";
        if (!bins.empty()) {
            std::vector<double> edges;
            for (const auto& cell : split_csv_line(bins)) edges.push_back(to_number(cell, 0));
            const auto classes = ingest::classify_by_size(gets, edges);
            if (!csv_out.empty()) {
                std::ofstream out(csv_out);
                out << "class,mean_bytes,accesses\n";
                for (std::size_t i = 0; i < classes.size(); ++i)
                    if (classes[i].count > 0)
                        out << "class" << i + 1 << "," << classes[i].mean_bytes << ","
                            << classes[i].count << "\n";
            }
            std::vector<std::pair<std::string, double>> counts;
            for (std::size_t i = 0; i < classes.size(); ++i) {
                std::cout << "class " << i + 1 << " [" << classes[i].lower << ", "
                          << classes[i].upper << ") count " << classes[i].count << " mean-bytes "
                          << classes[i].mean_bytes << "\n";
                counts.emplace_back("class" + std::to_string(i + 1),
                                    static_cast<double>(classes[i].count));
            }
            if (window > 0.0) {
                const auto model = ingest::build_workload_model(counts, window);
                for (const auto& c : model.classes)
                    std::cout << c.name << " share " << c.share_pct << "% tpm "
                              << c.arrivals_per_min << " interarrival " << c.interarrival << "\n";
                std::cout << "total tpm " << model.total.arrivals_per_min << " interarrival "
                          << model.total.interarrival << "\n";
                if (!model_out.empty()) {
                    // Network-transfer open model, solvable with `solred --model`.
                    qnsolver::OpenModel qn;
                    qn.arrival_rate = model.total.arrival_rate;
                    for (std::size_t i = 0; i < classes.size(); ++i) {
                        if (classes[i].count == 0) continue;
                        qnsolver::Station st;
                        st.name = "net-class" + std::to_string(i + 1);
                        st.kind = qnsolver::StationKind::queueing;
                        st.visits = model.classes[i].share_pct / 100.0;
                        st.service = qnsolver::ethernet_transfer_demand(170, classes[i].mean_bytes,
                                                                        100e6)
                                         .demand_seconds;
                        qn.stations.push_back(std::move(st));
                    }
                    std::ofstream out(model_out);
                    modelio::write_model(out, qn);
                }
            }
        }
        return log.rejects.empty() ? 0 : 2;
    }
    if (kind == "top") {
        const auto snap = ingest::parse_top(text);
        std::cout << "load " << snap.load1 << " " << snap.load5 << " " << snap.load15 << "\n"
                  << "cpu-busy " << snap.cpu_busy_pct() << "\n"
                  << "mem-used-pct " << snap.mem_used_pct() << "\n"
                  << "processes " << snap.processes.size() << "\n";
        return 0;
    }
    throw domain_error("unknown --kind");
}

// ---- whatif ----

int run_whatif(const std::string& model_path, const std::vector<std::string>& edit_args,
               const std::string& write_path) {
    auto model = modelio::read_model_file(model_path);

    std::vector<qnsolver::Edit> edits;
    for (const auto& e : edit_args) {
        const auto colon = e.find(':');
        const auto eq = e.find('=');
        if (colon == std::string::npos) throw domain_error("edit must look like op:station=value");
        const auto op = e.substr(0, colon);
        if (op == "scale") {
            edits.push_back(qnsolver::ScaleService{e.substr(colon + 1, eq - colon - 1),
                                                   to_number(e.substr(eq + 1), 0)});
        } else if (op == "visits") {
            edits.push_back(qnsolver::SetVisits{e.substr(colon + 1, eq - colon - 1),
                                                to_number(e.substr(eq + 1), 0)});
        } else if (op == "split") {
            // split:station=ways,speedup
            const auto value = e.substr(eq + 1);
            const auto comma = value.find(',');
            qnsolver::SplitStation split;
            split.station = e.substr(colon + 1, eq - colon - 1);
            split.ways = static_cast<std::size_t>(to_number(value.substr(0, comma), 0));
            split.speedup = comma == std::string::npos ? 1.0 : to_number(value.substr(comma + 1), 0);
            edits.push_back(split);
        } else if (op == "add") {
            // add:name=kind,V,S
            const auto cells = split_csv_line(e.substr(eq + 1));
            if (cells.size() != 3) throw domain_error("add needs kind,V,S");
            qnsolver::Station s;
            s.name = e.substr(colon + 1, eq - colon - 1);
            s.kind = cells[0] == "delay" ? qnsolver::StationKind::delay
                                         : qnsolver::StationKind::queueing;
            s.visits = to_number(cells[1], 0);
            s.service = to_number(cells[2], 0);
            edits.push_back(qnsolver::AddStation{s});
        } else {
            throw domain_error("edit op must be scale, visits, split or add");
        }
    }

    if (auto* open = std::get_if<qnsolver::OpenModel>(&model))
        model = qnsolver::what_if(*open, edits);
    else
        model = qnsolver::what_if(std::get<qnsolver::ClosedModel>(model), edits);

    if (!write_path.empty()) {
        std::ofstream out(write_path);
        modelio::write_model(out, model);
    }
    std::cout << report::solred_report(model);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"perfkit: analytic performance evaluation toolkit"};
    app.require_subcommand(1);

    // amdahl
    auto* amdahl_cmd = app.add_subcommand("amdahl", "speedup algebra");
    std::vector<double> fs, ks;
    std::string solve = "A";
    std::optional<double> target, time_opt, f_after;
    amdahl_cmd->add_option("--f", fs, "improved fraction (repeatable)");
    amdahl_cmd->add_option("--k", ks, "local factor (repeatable)");
    amdahl_cmd->add_option("--solve", solve, "A | f | k | T | fbefore");
    amdahl_cmd->add_option("--A", target, "target speedup");
    amdahl_cmd->add_option("--T", time_opt, "original time");
    amdahl_cmd->add_option("--f-after", f_after, "fraction of the improved run");

    // bench
    auto* bench_cmd = app.add_subcommand("bench", "benchmark comparison statistics");
    std::string bench_input = "-", mean_kind, normalize_ref, ci_pair, spec_ref;
    bool rates = false;
    double ci_alpha = 0.05;
    bench_cmd->add_option("--input", bench_input, "CSV matrix (default stdin)");
    bench_cmd->add_option("--mean", mean_kind, "arithmetic | harmonic | geometric");
    bench_cmd->add_option("--normalize-ref", normalize_ref, "reference system");
    bench_cmd->add_flag("--rates", rates, "rate-style ratios (ref/value)");
    bench_cmd->add_option("--ci-alpha", ci_alpha, "significance level");
    bench_cmd->add_option("--ci", ci_pair, "paired CI between SYSA:SYSB");
    bench_cmd->add_option("--spec-ref", spec_ref, "SPEC-style index against this system");

    // oplaws
    auto* oplaws_cmd = app.add_subcommand("oplaws", "operational-law calculator");
    std::string law;
    std::vector<double> law_args;
    oplaws_cmd->add_option("law", law, "which law")->required();
    oplaws_cmd->add_option("values", law_args, "law inputs");

    // solred
    auto* solred_cmd = app.add_subcommand("solred", "queueing network solver");
    std::vector<std::string> solred_args;
    std::string solred_model, solred_output = "pretty";
    bool solred_trace = false;
    solred_cmd->add_option("args", solred_args, "0 lambda K V S... | 1 N Z K V S... [start end step]");
    solred_cmd->add_option("--model", solred_model, "model file instead of positionals");
    solred_cmd->add_flag("--trace", solred_trace, "print the MVA iteration table");
    solred_cmd->add_option("--output", solred_output, "pretty | gnuplot | csv (sweeps)");

    // cluster
    auto* cluster_cmd = app.add_subcommand("cluster", "workload clustering");
    std::string cluster_input = "-", cluster_scale = "none", cluster_metric = "euclidean";
    std::size_t cluster_k = 1;
    std::optional<double> cluster_maxd;
    bool cluster_gnuplot = false, cluster_cbmg = false;
    cluster_cmd->add_option("--input", cluster_input, "CSV components x parameters");
    cluster_cmd->add_option("--scale", cluster_scale, "zscore | log | none");
    cluster_cmd->add_option("--metric", cluster_metric, "euclidean | weighted | chi2");
    cluster_cmd->add_option("--k", cluster_k, "stop at k clusters");
    cluster_cmd->add_option("--max-distance", cluster_maxd, "cut height instead of k");
    cluster_cmd->add_flag("--gnuplot", cluster_gnuplot, "emit merge heights for plotting");
    cluster_cmd->add_flag("--cbmg", cluster_cbmg, "input is a CBMG transition matrix");

    // forecast
    auto* forecast_cmd = app.add_subcommand("forecast", "time-series forecasting");
    std::string forecast_input = "-", method = "ols";
    std::optional<double> predict_x;
    forecast_cmd->add_option("--input", forecast_input, "one- or two-column CSV");
    forecast_cmd->add_option("--method", method, "ols | ma:n | exp:a | exp-var:m[:start] | tustin:a");
    forecast_cmd->add_option("--predict", predict_x, "evaluate the OLS fit at x");

    // ingest
    auto* ingest_cmd = app.add_subcommand("ingest", "monitor/log parsers");
    std::string ingest_input = "-", ingest_kind, ingest_bins, ingest_model_out, ingest_csv_out;
    bool ingest_commas = false;
    double ingest_window = 0.0;
    std::vector<std::string> ingest_edits;
    ingest_cmd->add_option("--input", ingest_input, "input file (default stdin)");
    ingest_cmd->add_option("--kind", ingest_kind, "vmstat | sar-u | sar-d | sar-b | gprof | accesslog | top")
        ->required();
    ingest_cmd->add_flag("--comma-decimals", ingest_commas, "numbers use decimal commas");
    ingest_cmd->add_option("--edit", ingest_edits, "gprof what-if: scale:name=k | calls:name=n | ms:name=v");
    ingest_cmd->add_option("--bins", ingest_bins, "size-class edges for accesslog");
    ingest_cmd->add_option("--window", ingest_window, "observation window seconds");
    ingest_cmd->add_option("--model-out", ingest_model_out,
                           "write a network-transfer open model file for solred");
    ingest_cmd->add_option("--csv-out", ingest_csv_out,
                           "write the size classes as a clusterable CSV dataset");

    // whatif
    auto* whatif_cmd = app.add_subcommand("whatif", "edit a model and re-solve");
    std::string whatif_model, whatif_write;
    std::vector<std::string> whatif_edits;
    whatif_cmd->add_option("--model", whatif_model, "model file")->required();
    whatif_cmd->add_option("--edit", whatif_edits,
                           "scale:st=k | visits:st=v | split:st=ways,k | add:name=kind,V,S");
    whatif_cmd->add_option("--write", whatif_write, "save the edited model");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;  // usage errors exit 1, --help exits 0
    }

    try {
        if (amdahl_cmd->parsed()) return run_amdahl(fs, ks, solve, target, time_opt, f_after);
        if (bench_cmd->parsed())
            return run_bench(bench_input, mean_kind, normalize_ref, rates, ci_alpha, ci_pair,
                             spec_ref);
        if (oplaws_cmd->parsed()) return run_oplaws(law, law_args);
        if (solred_cmd->parsed())
            return run_solred(solred_args, solred_model, solred_trace, solred_output);
        if (cluster_cmd->parsed())
            return run_cluster(cluster_input, cluster_scale, cluster_metric, cluster_k,
                               cluster_maxd, cluster_gnuplot, cluster_cbmg);
        if (forecast_cmd->parsed()) return run_forecast(forecast_input, method, predict_x);
        if (ingest_cmd->parsed())
            return run_ingest(ingest_input, ingest_kind, ingest_commas, ingest_edits, ingest_bins,
                              ingest_window, ingest_model_out, ingest_csv_out);
        if (whatif_cmd->parsed()) return run_whatif(whatif_model, whatif_edits, whatif_write);
    } catch (const perfkit::saturation_error& e) {
        std::cerr << "saturated: " << e.what() << "\n";
        return 2;
    } catch (const perfkit::parse_error& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 1;
}
