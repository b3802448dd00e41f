#include "perfkit/ingest.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <limits>
#include <sstream>

namespace perfkit::ingest {

namespace {

std::vector<std::string> split_ws(const std::string& line) {
    std::vector<std::string> out;
    std::istringstream is(line);
    std::string tok;
    while (is >> tok) out.push_back(tok);
    return out;
}

bool parse_number(std::string tok, double& out, bool comma_decimals) {
    if (comma_decimals) {
        // "1.234,5" -> "1234.5"; plain comma decimals also accepted.
        std::erase(tok, '.');
        std::replace(tok.begin(), tok.end(), ',', '.');
    }
    try {
        std::size_t used = 0;
        out = std::stod(tok, &used);
        return used == tok.size();
    } catch (...) {
        return false;
    }
}

bool masked(const std::string& tok) {
    return !tok.empty() && std::all_of(tok.begin(), tok.end(),
                                       [](unsigned char c) { return c == 'x' || c == 'X'; });
}

std::vector<std::string> lines_of(const std::string& text) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : text) {
        if (c == '\n') {
            out.push_back(cur);
            cur.clear();
        } else if (c != '\r') {
            cur.push_back(c);
        }
    }
    if (!cur.empty()) out.push_back(cur);
    return out;
}

}  // namespace

// ---- vmstat ----

VmstatReport parse_vmstat(const std::string& text, bool comma_decimals) {
    VmstatReport report;
    bool first_data_seen = false;
    std::size_t lineno = 0;
    for (const auto& line : lines_of(text)) {
        ++lineno;
        auto toks = split_ws(line);
        if (toks.empty()) continue;
        // Header lines contain non-numeric tokens ("procs", "r", "swpd", ...).
        double probe;
        if (!parse_number(toks[0], probe, comma_decimals)) continue;
        if (toks.size() != 16) {
            report.rejects.push_back({lineno, "expected 16 columns, got " +
                                                  std::to_string(toks.size()), line});
            continue;
        }
        std::vector<double> v(16);
        bool ok = true;
        for (std::size_t i = 0; i < 16 && ok; ++i) ok = parse_number(toks[i], v[i], comma_decimals);
        if (!ok) {
            report.rejects.push_back({lineno, "non-numeric column", line});
            continue;
        }
        if (!first_data_seen) {
            // Boot-time averages; dropped by design.
            first_data_seen = true;
            continue;
        }
        VmstatSample s;
        s.r = static_cast<long>(v[0]);
        s.b = static_cast<long>(v[1]);
        s.w = static_cast<long>(v[2]);
        s.swpd = static_cast<long>(v[3]);
        s.free_kb = static_cast<long>(v[4]);
        s.buff = static_cast<long>(v[5]);
        s.cache = static_cast<long>(v[6]);
        s.si = v[7];
        s.so = v[8];
        s.bi = v[9];
        s.bo = v[10];
        s.interrupts = v[11];
        s.cs = v[12];
        s.us = v[13];
        s.sy = v[14];
        s.id = v[15];
        if (s.us < 0 || s.us > 100 || s.sy < 0 || s.sy > 100 || s.id < 0 || s.id > 100 ||
            s.us + s.sy + s.id > 102.0) {
            report.rejects.push_back({lineno, "cpu percentages out of range", line});
            continue;
        }
        report.samples.push_back(s);
    }
    return report;
}

VmstatSummary summarize(const std::vector<VmstatSample>& samples) {
    if (samples.empty()) throw domain_error("no samples to summarize");
    VmstatSummary out;
    out.count = samples.size();
    const double n = static_cast<double>(samples.size());
    for (const auto& s : samples) {
        out.mean.r += s.r;
        out.mean.b += s.b;
        out.mean.w += s.w;
        out.mean.swpd += s.swpd;
        out.mean.free_kb += s.free_kb;
        out.mean.buff += s.buff;
        out.mean.cache += s.cache;
        out.mean.si += s.si;
        out.mean.so += s.so;
        out.mean.bi += s.bi;
        out.mean.bo += s.bo;
        out.mean.interrupts += s.interrupts;
        out.mean.cs += s.cs;
        out.mean.us += s.us;
        out.mean.sy += s.sy;
        out.mean.id += s.id;
    }
    for (double* field : {&out.mean.r, &out.mean.b, &out.mean.w, &out.mean.swpd, &out.mean.free_kb,
                          &out.mean.buff, &out.mean.cache, &out.mean.si, &out.mean.so, &out.mean.bi,
                          &out.mean.bo, &out.mean.interrupts, &out.mean.cs, &out.mean.us,
                          &out.mean.sy, &out.mean.id})
        *field /= n;
    return out;
}

// ---- sar ----

int parse_time_of_day(const std::string& hhmmss) {
    int h = 0, m = 0, s = 0;
    char c1 = 0, c2 = 0;
    std::istringstream is(hhmmss);
    if (!(is >> h >> c1 >> m >> c2 >> s) || c1 != ':' || c2 != ':' || h < 0 || h > 24 || m < 0 ||
        m > 59 || s < 0 || s > 59)
        throw parse_error("bad timestamp '" + hhmmss + "'");
    return h * 3600 + m * 60 + s;
}

namespace {

std::size_t sar_value_columns(SarKind kind) {
    switch (kind) {
        case SarKind::cpu: return 4;   // %user %nice %system %idle
        case SarKind::disk: return 2;  // tps sect/s
        case SarKind::io: return 5;    // tps rtps wtps bread/s bwrtn/s
    }
    return 0;
}

std::vector<std::string> sar_default_columns(SarKind kind) {
    switch (kind) {
        case SarKind::cpu: return {"%user", "%nice", "%system", "%idle"};
        case SarKind::disk: return {"tps", "sect/s"};
        case SarKind::io: return {"tps", "rtps", "wtps", "bread/s", "bwrtn/s"};
    }
    return {};
}

}  // namespace

SarReport parse_sar(const std::string& text, SarKind kind, bool comma_decimals) {
    SarReport report;
    report.kind = kind;
    report.columns = sar_default_columns(kind);
    const std::size_t want = sar_value_columns(kind);
    const bool has_device = kind != SarKind::io;

    std::size_t lineno = 0;
    for (const auto& line : lines_of(text)) {
        ++lineno;
        auto toks = split_ws(line);
        if (toks.empty()) continue;
        if (toks[0].rfind("$", 0) == 0 || toks[0] == "Average:") continue;  // prompt/footer
        int tod;
        try {
            tod = parse_time_of_day(toks[0]);
        } catch (const parse_error&) {
            continue;  // not a data line (banner etc.)
        }
        // Header rows carry the column names after the timestamp.
        bool numeric_tail = true;
        double probe;
        if (toks.size() < 2 || !parse_number(toks.back(), probe, comma_decimals))
            numeric_tail = false;
        if (!numeric_tail) {
            if (toks.size() >= want + 1) {
                report.columns.assign(toks.end() - static_cast<std::ptrdiff_t>(want), toks.end());
            }
            continue;
        }

        const std::size_t expected = 1 + (has_device ? 1 : 0) + want;
        if (toks.size() != expected) {
            report.rejects.push_back(
                {lineno, "expected " + std::to_string(expected) + " columns, got " +
                             std::to_string(toks.size()), line});
            continue;
        }
        SarRow row;
        row.seconds_of_day = tod;
        std::size_t at = 1;
        if (has_device) row.device = toks[at++];
        bool ok = true;
        for (std::size_t i = 0; i < want && ok; ++i) {
            double v;
            ok = parse_number(toks[at + i], v, comma_decimals);
            row.values.push_back(v);
        }
        if (!ok) {
            report.rejects.push_back({lineno, "non-numeric value column", line});
            continue;
        }
        report.rows.push_back(std::move(row));
    }
    return report;
}

std::vector<SarRow> time_filter(const std::vector<SarRow>& rows, int start_seconds,
                                int end_seconds) {
    std::vector<SarRow> out;
    for (const auto& r : rows)
        if (r.seconds_of_day >= start_seconds && r.seconds_of_day <= end_seconds) out.push_back(r);
    return out;
}

std::string emit_sar(const SarReport& report) {
    std::ostringstream os;
    auto tod = [](int secs) {
        char buf[16];
        std::snprintf(buf, sizeof buf, "%02d:%02d:%02d", secs / 3600, (secs / 60) % 60, secs % 60);
        return std::string(buf);
    };
    os << "00:00:00";
    if (report.kind != SarKind::io) os << (report.kind == SarKind::disk ? "  DEV" : "  CPU");
    for (const auto& c : report.columns) os << "  " << c;
    os << "\n";
    os.setf(std::ios::fixed);
    os.precision(2);
    for (const auto& r : report.rows) {
        os << tod(r.seconds_of_day);
        if (report.kind != SarKind::io) os << "  " << (r.device.empty() ? "all" : r.device);
        for (double v : r.values) os << "  " << v;
        os << "\n";
    }
    return os.str();
}

// ---- monitor overhead ----

double monitor_overhead(double exec_time, double interval) {
    if (!(exec_time > 0.0) || !(interval > 0.0)) throw domain_error("times must be > 0");
    return exec_time / interval;
}

double interval_for(double overhead, double exec_time) {
    if (!(overhead > 0.0) || !(exec_time > 0.0)) throw domain_error("inputs must be > 0");
    return exec_time / overhead;
}

double log_volume(double record_bytes, double interval, double duration) {
    if (!(record_bytes >= 0.0) || !(interval > 0.0) || !(duration >= 0.0))
        throw domain_error("bad log volume inputs");
    return record_bytes * (duration / interval);
}

// ---- gprof ----

double GprofFlatProfile::total_seconds() const {
    if (rows.empty()) throw domain_error("empty profile");
    return rows.back().cumulative_s;
}

const GprofRow& GprofFlatProfile::row(const std::string& name) const {
    for (const auto& r : rows)
        if (r.name == name) return r;
    throw domain_error("unknown procedure: " + name);
}

GprofFlatProfile parse_gprof(const std::string& text, bool comma_decimals) {
    GprofFlatProfile profile;
    std::size_t lineno = 0;
    for (const auto& line : lines_of(text)) {
        ++lineno;
        auto toks = split_ws(line);
        if (toks.empty()) continue;

        // "Each sample counts as 0.01 seconds."
        if (line.find("Each sample counts as") != std::string::npos) {
            for (const auto& t : toks) {
                double v;
                if (parse_number(t, v, comma_decimals)) {
                    profile.sample_period = v;
                    break;
                }
            }
            continue;
        }

        double first;
        if (!parse_number(toks[0], first, comma_decimals) && !masked(toks[0]))
            continue;  // header / banner line

        auto parse_row = [&]() -> std::optional<GprofRow> {
            if (toks.size() < 4 || toks.size() > 7) return std::nullopt;
            GprofRow row;
            row.name = toks.back();
            std::vector<std::optional<double>> nums;
            for (std::size_t i = 0; i + 1 < toks.size(); ++i) {
                if (masked(toks[i])) {
                    nums.emplace_back(std::nullopt);
                } else {
                    double v;
                    if (!parse_number(toks[i], v, comma_decimals)) return std::nullopt;
                    nums.emplace_back(v);
                }
            }
            // Percentage and cumulative time are mandatory anchors.
            if (nums.size() < 3 || !nums[0] || !nums[1]) return std::nullopt;
            row.pct_time = *nums[0];
            row.cumulative_s = *nums[1];
            row.self_s = nums[2];
            if (nums.size() > 3) row.calls = nums[3];
            if (nums.size() > 4) row.self_ms_per_call = nums[4];
            if (nums.size() > 5) row.total_ms_per_call = nums[5];
            return row;
        };
        if (auto row = parse_row())
            profile.rows.push_back(std::move(*row));
        else
            profile.rejects.push_back({lineno, "unrecognized row shape", line});
    }

    // Back-fill what the masked cells imply.
    double prev_cum = 0.0;
    for (auto& row : profile.rows) {
        if (!row.self_s) row.self_s = row.cumulative_s - prev_cum;
        prev_cum = row.cumulative_s;
        if (!row.calls && row.self_s && row.self_ms_per_call && *row.self_ms_per_call > 0.0)
            row.calls = *row.self_s * 1000.0 / *row.self_ms_per_call;
        if (!row.self_ms_per_call && row.calls && *row.calls > 0.0 && row.self_s)
            row.self_ms_per_call = *row.self_s * 1000.0 / *row.calls;
    }
    return profile;
}

GprofWhatIf gprof_what_if(const GprofFlatProfile& profile, const std::vector<GprofEdit>& edits) {
    if (profile.rows.empty()) throw domain_error("empty profile");

    std::vector<GprofRow> rows = profile.rows;
    auto find = [&rows](const std::string& name) -> GprofRow& {
        for (auto& r : rows)
            if (r.name == name) return r;
        throw domain_error("unknown procedure: " + name);
    };

    GprofWhatIf result;
    for (const auto& r : rows) result.original_seconds += r.self_s.value_or(0.0);

    for (const auto& e : edits) {
        if (const auto* sp = std::get_if<ScaleProc>(&e)) {
            if (!(sp->factor > 0.0)) throw domain_error("scale factor must be > 0");
            auto& r = find(sp->name);
            r.self_s = r.self_s.value_or(0.0) / sp->factor;
            if (r.self_ms_per_call) *r.self_ms_per_call /= sp->factor;
        } else if (const auto* sc = std::get_if<SetCalls>(&e)) {
            if (sc->calls < 0.0) throw domain_error("negative call count");
            auto& r = find(sc->name);
            if (!r.self_ms_per_call)
                throw domain_error("set_calls needs a per-call self time for " + sc->name);
            r.calls = sc->calls;
            r.self_s = sc->calls * *r.self_ms_per_call / 1000.0;
        } else if (const auto* sm = std::get_if<SetMsPerCall>(&e)) {
            if (sm->ms < 0.0) throw domain_error("negative per-call time");
            auto& r = find(sm->name);
            if (!r.calls) throw domain_error("set_ms_per_call needs a call count for " + sm->name);
            r.self_ms_per_call = sm->ms;
            r.self_s = *r.calls * sm->ms / 1000.0;
        }
    }

    for (const auto& r : rows) result.new_seconds += r.self_s.value_or(0.0);
    if (!(result.new_seconds > 0.0)) throw domain_error("edited profile has no time left");
    result.speedup = result.original_seconds / result.new_seconds;
    return result;
}

// ---- access log ----

namespace {

// Days since 1970-01-01 for a civil date (Howard Hinnant's algorithm).
std::int64_t days_from_civil(int y, int m, int d) {
    y -= m <= 2;
    const int era = (y >= 0 ? y : y - 399) / 400;
    const unsigned yoe = static_cast<unsigned>(y - era * 400);
    const unsigned doy = (153u * static_cast<unsigned>(m + (m > 2 ? -3 : 9)) + 2) / 5 +
                         static_cast<unsigned>(d) - 1;
    const unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
    return static_cast<std::int64_t>(era) * 146097 + static_cast<std::int64_t>(doe) - 719468;
}

int month_number(const std::string& mon) {
    static const char* names[] = {"Jan", "Feb", "Mar", "Apr", "May", "Jun",
                                  "Jul", "Aug", "Sep", "Oct", "Nov", "Dec"};
    for (int i = 0; i < 12; ++i)
        if (mon == names[i]) return i + 1;
    throw parse_error("bad month '" + mon + "'");
}

// "16/Feb/2002:12:55:58 +0100" -> unix seconds.
std::int64_t parse_clf_timestamp(const std::string& stamp) {
    int day, year, hh, mm, ss, off_sign = 1, off_h = 0, off_m = 0;
    char mon[4] = {0};
    if (std::sscanf(stamp.c_str(), "%d/%3s/%d:%d:%d:%d", &day, mon, &year, &hh, &mm, &ss) != 6)
        throw parse_error("bad timestamp '" + stamp + "'");
    const auto plus = stamp.find_first_of("+-", stamp.find(' '));
    if (plus != std::string::npos && plus + 4 < stamp.size()) {
        off_sign = stamp[plus] == '-' ? -1 : 1;
        off_h = (stamp[plus + 1] - '0') * 10 + (stamp[plus + 2] - '0');
        off_m = (stamp[plus + 3] - '0') * 10 + (stamp[plus + 4] - '0');
    }
    const std::int64_t days = days_from_civil(year, month_number(mon), day);
    std::int64_t secs = days * 86400 + hh * 3600 + mm * 60 + ss;
    secs -= off_sign * (off_h * 3600 + off_m * 60);
    return secs;
}

const std::vector<std::string> kKnownMethods = {"GET",    "HEAD",    "POST",  "PUT", "DELETE",
                                                "OPTIONS", "TRACE",  "CONNECT", "PATCH"};

}  // namespace

AccessLog parse_access_log(const std::string& text) {
    AccessLog log;
    std::size_t lineno = 0;
    for (const auto& line : lines_of(text)) {
        ++lineno;
        if (line.find_first_not_of(" \t") == std::string::npos) continue;
        try {
            AccessLogRecord rec;
            std::size_t pos = 0;
            auto skip_ws = [&] {
                while (pos < line.size() && std::isspace(static_cast<unsigned char>(line[pos]))) ++pos;
            };
            auto take_bare = [&]() -> std::string {
                skip_ws();
                std::size_t start = pos;
                while (pos < line.size() && !std::isspace(static_cast<unsigned char>(line[pos]))) ++pos;
                if (start == pos) throw parse_error("truncated line");
                return line.substr(start, pos - start);
            };

            rec.client = take_bare();
            skip_ws();
            // Optional ident/authuser fields before the bracketed timestamp.
            while (pos < line.size() && line[pos] != '[') take_bare(), skip_ws();
            if (pos >= line.size() || line[pos] != '[') throw parse_error("missing timestamp");
            const auto close = line.find(']', pos);
            if (close == std::string::npos) throw parse_error("unterminated timestamp");
            rec.timestamp = parse_clf_timestamp(line.substr(pos + 1, close - pos - 1));
            pos = close + 1;

            skip_ws();
            if (pos >= line.size() || line[pos] != '"') throw parse_error("missing request");
            const auto endq = line.find('"', pos + 1);
            if (endq == std::string::npos) throw parse_error("unterminated request");
            const auto req = split_ws(line.substr(pos + 1, endq - pos - 1));
            if (req.size() != 3) throw parse_error("request is not 'METHOD URL PROTO'");
            rec.method = req[0];
            rec.url = req[1];
            rec.protocol = req[2];
            if (std::find(kKnownMethods.begin(), kKnownMethods.end(), rec.method) ==
                kKnownMethods.end())
                throw parse_error("unknown method '" + rec.method + "'");
            pos = endq + 1;

            const auto status_tok = take_bare();
            const auto bytes_tok = take_bare();
            double status;
            if (!parse_number(status_tok, status, false) || status < 100 || status > 599)
                throw parse_error("bad status '" + status_tok + "'");
            rec.status = static_cast<int>(status);
            if (bytes_tok == "-") {
                rec.bytes = 0;
            } else {
                double b;
                if (!parse_number(bytes_tok, b, false) || b < 0)
                    throw parse_error("bad byte count '" + bytes_tok + "'");
                rec.bytes = static_cast<std::uint64_t>(b);
            }
            log.records.push_back(std::move(rec));
        } catch (const parse_error& e) {
            log.rejects.push_back({lineno, e.what(), line});
        }
    }
    return log;
}

std::vector<AccessLogRecord> filter_method(const std::vector<AccessLogRecord>& records,
                                           const std::string& method) {
    std::vector<AccessLogRecord> out;
    for (const auto& r : records)
        if (r.method == method) out.push_back(r);
    return out;
}

std::vector<AccessLogRecord> filter_status(const std::vector<AccessLogRecord>& records, int lo,
                                           int hi) {
    std::vector<AccessLogRecord> out;
    for (const auto& r : records)
        if (r.status >= lo && r.status <= hi) out.push_back(r);
    return out;
}

std::vector<SizeClass> classify_by_size(const std::vector<AccessLogRecord>& records,
                                        const std::vector<double>& edges) {
    for (std::size_t i = 1; i < edges.size(); ++i)
        if (!(edges[i - 1] < edges[i])) throw domain_error("size edges must be ascending");

    std::vector<SizeClass> classes(edges.size() + 1);
    for (std::size_t i = 0; i <= edges.size(); ++i) {
        classes[i].lower = i == 0 ? 0.0 : edges[i - 1];
        classes[i].upper = i == edges.size() ? std::numeric_limits<double>::infinity() : edges[i];
    }
    for (const auto& r : records) {
        const double b = static_cast<double>(r.bytes);
        std::size_t idx = 0;
        while (idx < edges.size() && b >= edges[idx]) ++idx;
        classes[idx].count += 1;
        classes[idx].mean_bytes += b;
    }
    for (auto& c : classes)
        if (c.count > 0) c.mean_bytes /= static_cast<double>(c.count);
    return classes;
}

// ---- workload model ----

WorkloadModel build_workload_model(const std::vector<std::pair<std::string, double>>& class_counts,
                                   double window_seconds) {
    if (!(window_seconds > 0.0)) throw domain_error("window must be > 0");
    WorkloadModel model;
    double total = 0.0;
    for (const auto& [_, count] : class_counts) {
        if (count < 0.0) throw domain_error("negative class count");
        total += count;
    }
    if (!(total > 0.0)) throw domain_error("no requests");

    for (const auto& [name, count] : class_counts) {
        WorkloadClass c;
        c.name = name;
        c.count = count;
        c.share_pct = 100.0 * count / total;
        c.arrival_rate = count / window_seconds;
        c.arrivals_per_min = c.arrival_rate * 60.0;
        c.interarrival = c.arrival_rate > 0.0 ? 1.0 / c.arrival_rate
                                              : std::numeric_limits<double>::infinity();
        model.classes.push_back(std::move(c));
    }
    model.total.name = "total";
    model.total.count = total;
    model.total.share_pct = 100.0;
    model.total.arrival_rate = total / window_seconds;
    model.total.arrivals_per_min = model.total.arrival_rate * 60.0;
    model.total.interarrival = 1.0 / model.total.arrival_rate;
    return model;
}

// ---- top ----

double TopSnapshot::mem_used_pct() const {
    if (!(mem_total_kb > 0.0)) throw domain_error("no memory line parsed");
    return 100.0 * mem_used_kb / mem_total_kb;
}

double TopSnapshot::cpu_busy_pct() const { return cpu_user + cpu_system + cpu_nice; }

TopSnapshot parse_top(const std::string& text) {
    TopSnapshot snap;
    std::vector<std::string> header;
    std::size_t lineno = 0;

    auto number_before = [](const std::string& line, const std::string& suffix,
                            double& out) -> bool {
        // Finds "<number><suffix>" allowing whitespace, e.g. "82.5% user".
        std::size_t at = line.find(suffix);
        while (at != std::string::npos) {
            std::size_t end = at;
            while (end > 0 && std::isspace(static_cast<unsigned char>(line[end - 1]))) --end;
            std::size_t start = end;
            while (start > 0 && (std::isdigit(static_cast<unsigned char>(line[start - 1])) ||
                                 line[start - 1] == '.' || line[start - 1] == ','))
                --start;
            if (start < end) {
                std::string tok = line.substr(start, end - start);
                std::replace(tok.begin(), tok.end(), ',', '.');
                try {
                    out = std::stod(tok);
                    return true;
                } catch (...) {
                }
            }
            at = line.find(suffix, at + 1);
        }
        return false;
    };

    for (const auto& line : lines_of(text)) {
        ++lineno;
        if (line.find_first_not_of(" \t") == std::string::npos) continue;

        if (line.find("load average:") != std::string::npos) {
            const auto at = line.find("load average:");
            auto rest = line.substr(at + 13);
            std::replace(rest.begin(), rest.end(), ',', ' ');
            std::istringstream is(rest);
            is >> snap.load1 >> snap.load5 >> snap.load15;
            continue;
        }
        if (line.find("CPU states:") != std::string::npos ||
            line.find("%Cpu") != std::string::npos) {
            number_before(line, "% user", snap.cpu_user);
            number_before(line, "% system", snap.cpu_system);
            number_before(line, "% nice", snap.cpu_nice);
            number_before(line, "% idle", snap.cpu_idle);
            continue;
        }
        if (line.rfind("Mem:", 0) == 0 || line.find(" Mem:") != std::string::npos) {
            number_before(line, "K av", snap.mem_total_kb);
            number_before(line, "K used", snap.mem_used_kb);
            number_before(line, "K free", snap.mem_free_kb);
            continue;
        }
        if (line.rfind("Swap:", 0) == 0) {
            number_before(line, "K av", snap.swap_total_kb);
            number_before(line, "K used", snap.swap_used_kb);
            number_before(line, "K free", snap.swap_free_kb);
            continue;
        }
        auto toks = split_ws(line);
        if (toks.size() >= 2 && toks[0] == "PID") {
            header = toks;
            continue;
        }
        if (!header.empty()) {
            if (toks.size() < header.size()) {
                snap.rejects.push_back({lineno, "short process row", line});
                continue;
            }
            TopProcess proc;
            // STAT flags may split ("R N"); fold extras into the STAT column.
            const std::size_t extras = toks.size() - header.size();
            std::size_t t = 0;
            for (std::size_t h = 0; h < header.size(); ++h) {
                std::string value = toks[t++];
                if (header[h] == "STAT")
                    for (std::size_t e = 0; e < extras; ++e) value += " " + toks[t++];
                proc.fields[header[h]] = value;
            }
            snap.processes.push_back(std::move(proc));
        }
    }
    return snap;
}

}  // namespace perfkit::ingest
