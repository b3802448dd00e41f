#include "perfkit/modelio.hpp"

#include <fstream>
#include <sstream>

#include "perfkit/errors.hpp"

namespace perfkit::modelio {

namespace {

std::string strip_comment(const std::string& line) {
    const auto hash = line.find('#');
    return hash == std::string::npos ? line : line.substr(0, hash);
}

qnsolver::StationKind parse_kind(const std::string& word, std::size_t lineno) {
    if (word == "queueing" || word == "q" || word == "queue") return qnsolver::StationKind::queueing;
    if (word == "delay" || word == "d") return qnsolver::StationKind::delay;
    throw parse_error("station kind must be 'queueing' or 'delay', got '" + word + "'", lineno);
}

}  // namespace

Model read_model(std::istream& in) {
    std::string line;
    std::size_t lineno = 0;

    // Header line.
    std::string kind;
    double a = 0.0, b = 0.0;
    bool open = false;
    while (std::getline(in, line)) {
        ++lineno;
        std::istringstream is(strip_comment(line));
        if (!(is >> kind)) continue;
        if (kind == "open") {
            if (!(is >> a)) throw parse_error("expected 'open <lambda>'", lineno);
            open = true;
        } else if (kind == "closed") {
            if (!(is >> a >> b)) throw parse_error("expected 'closed <N> <Z>'", lineno);
        } else {
            throw parse_error("model must start with 'open' or 'closed'", lineno);
        }
        break;
    }
    if (kind.empty()) throw parse_error("empty model file");

    std::vector<qnsolver::Station> stations;
    while (std::getline(in, line)) {
        ++lineno;
        std::istringstream is(strip_comment(line));
        qnsolver::Station s;
        std::string kind_word;
        if (!(is >> s.name)) continue;
        if (!(is >> kind_word >> s.visits >> s.service))
            throw parse_error("expected 'name kind V S'", lineno);
        s.kind = parse_kind(kind_word, lineno);
        std::string extra;
        if (is >> extra) throw parse_error("trailing token '" + extra + "'", lineno);
        stations.push_back(std::move(s));
    }
    if (stations.empty()) throw parse_error("model has no stations");

    if (open) return qnsolver::OpenModel{a, std::move(stations)};
    if (a < 0 || a != static_cast<long>(a)) throw parse_error("population must be a nonnegative integer");
    return qnsolver::ClosedModel{static_cast<long>(a), b, std::move(stations)};
}

Model read_model_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw parse_error("cannot open model file " + path);
    return read_model(in);
}

void write_model(std::ostream& out, const Model& model) {
    const std::vector<qnsolver::Station>* stations = nullptr;
    if (const auto* open = std::get_if<qnsolver::OpenModel>(&model)) {
        out << "open " << open->arrival_rate << "\n";
        stations = &open->stations;
    } else {
        const auto& closed = std::get<qnsolver::ClosedModel>(model);
        out << "closed " << closed.population << " " << closed.think_time << "\n";
        stations = &closed.stations;
    }
    for (const auto& s : *stations)
        out << s.name << " " << (s.kind == qnsolver::StationKind::queueing ? "queueing" : "delay")
            << " " << s.visits << " " << s.service << "\n";
}

}  // namespace perfkit::modelio
