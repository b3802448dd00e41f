#include "perfkit/report.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include "perfkit/errors.hpp"

namespace perfkit::report {

namespace {

std::string fmt(const char* spec, double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, spec, v);
    return buf;
}

std::size_t utf8_length(const std::string& s) {
    std::size_t n = 0;
    for (unsigned char c : s)
        if ((c & 0xC0) != 0x80) ++n;
    return n;
}

std::string pad(const std::string& s, std::size_t width) {
    const std::size_t len = utf8_length(s);
    return len >= width ? s : s + std::string(width - len, ' ');
}

constexpr std::size_t kCell = 10;   // numeric cell width in the station table
constexpr std::size_t kLabel = 33;  // label width in the system block

std::string rule(std::size_t width) { return std::string(width, '*') + "\n"; }

std::string center(const std::string& s, std::size_t width) {
    const std::size_t len = utf8_length(s);
    if (len >= width) return s;
    const std::size_t left = (width - len) / 2;
    return std::string(left, ' ') + s + std::string(width - len - left, ' ');
}

std::string station_table(const std::vector<qnsolver::StationResult>& stations) {
    static const char* headers[] = {"Vi", "Si", "Di", "Ui", "Ni", "Ri", "Xi"};
    const std::size_t width = 1 + 4 + 1 + 7 * (kCell + 1);

    std::ostringstream os;
    os << rule(width);
    os << "*    *";
    for (const char* h : headers) os << center(h, kCell) << "*";
    os << "\n";
    os << rule(width);
    for (std::size_t i = 0; i < stations.size(); ++i) {
        const auto& s = stations[i];
        os << "* " << fmt("%2.0f", static_cast<double>(i + 1)) << " *";
        for (double v : {s.visits, s.service, s.demand, s.utilization, s.population,
                         s.response_time, s.throughput})
            os << fmt(" %8.4f ", v) << "*";
        os << "\n";
    }
    os << rule(width);
    return os.str();
}

std::string block_line(const std::string& label, const std::string& value) {
    return "* " + pad(label, kLabel) + "*" + pad(" " + value, kCell) + "*\n";
}

std::string block_gap() {
    return "* " + std::string(kLabel, ' ') + "*" + std::string(kCell, ' ') + "*\n";
}

std::string system_rule() { return rule(2 + kLabel + 1 + kCell + 1); }

std::string bounds_block(const std::vector<std::string>& lines) {
    std::size_t width = utf8_length("LÍMITES ASINTÓTICOS") + 4;
    for (const auto& l : lines) width = std::max(width, utf8_length(l) + 4);

    std::ostringstream os;
    os << rule(width);
    os << "*" << center("LÍMITES ASINTÓTICOS", width - 2) << "*\n";
    os << rule(width);
    for (const auto& l : lines) os << "* " << pad(l, width - 3) << "*\n";
    os << rule(width);
    return os.str();
}

}  // namespace

std::string solred_report(const qnsolver::OpenModel& model) {
    const auto solved = qnsolver::solve_open(model);

    std::ostringstream os;
    os << station_table(solved.stations);
    os << "\n";
    os << system_rule();
    os << block_line("TRABAJOS EN EL SISTEMA", fmt("%8.4f", solved.population));
    os << block_gap();
    os << block_line("TIEMPO DE RESPUESTA", fmt("%8.4f", solved.response_time));
    os << block_line("TIEMPO DE RESPUESTA MÍNIMO (D)", fmt("%8.4f", solved.min_response));
    os << block_gap();
    os << block_line("PRODUCTIVIDAD", fmt("%8.4f", solved.throughput));
    os << block_line("PRODUCTIVIDAD MÁXIMA", fmt("%8.4f", solved.max_throughput));
    os << system_rule();
    os << "\n";
    os << bounds_block({"Ropt = " + fmt("%.4f", solved.min_response),
                        "Xopt = " + fmt("%.4f", solved.max_throughput)});
    return os.str();
}

std::string solred_report(const qnsolver::ClosedModel& model) {
    const auto solved = qnsolver::solve_mva(model);
    const auto bounds = qnsolver::asymptotic_bounds(model);

    std::ostringstream os;
    os << station_table(solved.stations);
    os << "\n";
    os << system_rule();
    os << block_line("TRABAJOS EN EL SISTEMA", fmt("%3.0f", static_cast<double>(model.population)));
    os << block_line("TRABAJOS EN LOS DISPOSITIVOS", fmt("%8.4f", solved.population));
    os << block_line("TRABAJOS EN REFLEXIÓN", fmt("%8.4f", solved.think_population));
    os << block_line("PUNTO DE SATURACIÓN (N*)",
                     fmt("%3.0f", static_cast<double>(solved.saturation_point_int)));
    os << block_gap();
    os << block_line("TIEMPO DE RESPUESTA", fmt("%8.4f", solved.response_time));
    os << block_line("TIEMPO DE RESPUESTA MÍNIMO (D)", fmt("%8.4f", solved.min_response));
    os << block_gap();
    os << block_line("PRODUCTIVIDAD", fmt("%8.4f", solved.throughput));
    os << block_line("PRODUCTIVIDAD MÁXIMA", fmt("%8.4f", solved.max_throughput));
    os << system_rule();
    os << "\n";
    os << bounds_block(
        {"Ropt = máx { " + fmt("%.2f", bounds.total_demand) + ", " +
             fmt("%.2f", bounds.bottleneck_demand) + "*N - " + fmt("%.2f", bounds.think_time) + " }",
         "Xopt = mín { N/" + fmt("%.2f", bounds.total_demand + bounds.think_time) + ", " +
             fmt("%.2f", bounds.bottleneck_demand > 0 ? 1.0 / bounds.bottleneck_demand : 0.0) +
             " }"});
    return os.str();
}

std::string solred_report(const modelio::Model& model) {
    if (const auto* open = std::get_if<qnsolver::OpenModel>(&model)) return solred_report(*open);
    return solred_report(std::get<qnsolver::ClosedModel>(model));
}

std::string mva_trace_table(const qnsolver::ClosedModel& model) {
    const auto solved = qnsolver::solve_mva(model, true);
    std::ostringstream os;
    os << "n";
    for (std::size_t i = 0; i < model.stations.size(); ++i) os << "  R" << i + 1;
    os << "  R  X";
    for (std::size_t i = 0; i < model.stations.size(); ++i) os << "  N" << i + 1;
    os << "\n";
    for (const auto& row : solved.trace) {
        os << row.population;
        for (double r : row.station_response) os << fmt("  %.4f", r);
        os << fmt("  %.4f", row.response_time) << fmt("  %.4f", row.throughput);
        for (double n : row.station_population) os << fmt("  %.4f", n);
        os << "\n";
    }
    return os.str();
}

std::string sweep_report(const modelio::Model& model, double start, double end, double step,
                         SweepFormat format) {
    if (!(step > 0.0)) throw domain_error("sweep step must be > 0");
    if (end < start) throw domain_error("sweep end before start");

    std::ostringstream os;
    const char* sep = format == SweepFormat::csv ? "," : "  ";
    if (format == SweepFormat::csv)
        os << "load,R,X\n";
    else
        os << "# load  R  X\n";

    if (const auto* open = std::get_if<qnsolver::OpenModel>(&model)) {
        for (double lam = start; lam <= end + 1e-12; lam += step) {
            qnsolver::OpenModel m = *open;
            m.arrival_rate = lam;
            const auto solved = qnsolver::solve_open(m);
            os << fmt("%.6g", lam) << sep << fmt("%.6f", solved.response_time) << sep
               << fmt("%.6f", solved.throughput) << "\n";
        }
    } else {
        const auto& closed = std::get<qnsolver::ClosedModel>(model);
        for (long n = static_cast<long>(std::ceil(start - 1e-12));
             n <= static_cast<long>(std::floor(end + 1e-12));
             n += std::max(1L, static_cast<long>(std::llround(step)))) {
            qnsolver::ClosedModel m = closed;
            m.population = n;
            const auto solved = qnsolver::solve_mva(m);
            os << n << sep << fmt("%.6f", solved.response_time) << sep
               << fmt("%.6f", solved.throughput) << "\n";
        }
    }
    return os.str();
}

}  // namespace perfkit::report
