#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "perfkit/errors.hpp"

// Parsers and derived calculators for monitor textual output (vmstat, sar,
// top, gprof flat profiles) and web-server access logs, plus the
// monitor-overhead arithmetic and the workload-model builder.
//
// Every parser is total: each input line becomes either a typed record or a
// diagnosed reject carrying its line number.

namespace perfkit::ingest {

struct Reject {
    std::size_t line = 0;
    std::string reason;
    std::string text;
};

// ---- vmstat ----

struct VmstatSample {
    long r = 0, b = 0, w = 0;
    long swpd = 0, free_kb = 0, buff = 0, cache = 0;
    double si = 0, so = 0, bi = 0, bo = 0;
    double interrupts = 0, cs = 0;
    double us = 0, sy = 0, id = 0;
};

struct VmstatReport {
    std::vector<VmstatSample> samples;  // first data line already dropped
    std::vector<Reject> rejects;
};

struct VmstatMeans {
    double r = 0, b = 0, w = 0;
    double swpd = 0, free_kb = 0, buff = 0, cache = 0;
    double si = 0, so = 0, bi = 0, bo = 0;
    double interrupts = 0, cs = 0;
    double us = 0, sy = 0, id = 0;
};

struct VmstatSummary {
    VmstatMeans mean;  // per-column arithmetic means
    std::size_t count = 0;
};

// Accepts decimal commas when `comma_decimals` is set.
VmstatReport parse_vmstat(const std::string& text, bool comma_decimals = false);
VmstatSummary summarize(const std::vector<VmstatSample>& samples);

// ---- sar ----

enum class SarKind { cpu, disk, io };  // -u, -d, -b

struct SarRow {
    int seconds_of_day = 0;        // timestamp as seconds since midnight
    std::string device;            // -d rows; empty otherwise ("all" for -u)
    std::vector<double> values;    // kind-specific columns
};

struct SarReport {
    SarKind kind = SarKind::cpu;
    std::vector<std::string> columns;  // value column names from the header
    std::vector<SarRow> rows;
    std::vector<Reject> rejects;
};

SarReport parse_sar(const std::string& text, SarKind kind, bool comma_decimals = false);
std::vector<SarRow> time_filter(const std::vector<SarRow>& rows, int start_seconds,
                                int end_seconds);  // inclusive bounds
std::string emit_sar(const SarReport& report);
int parse_time_of_day(const std::string& hhmmss);

// ---- monitor overhead ----

double monitor_overhead(double exec_time, double interval);
double interval_for(double overhead, double exec_time);
// Total bytes accumulated by one record per activation over `duration`.
double log_volume(double record_bytes, double interval, double duration);

// ---- gprof ----

struct GprofRow {
    double pct_time = 0.0;
    double cumulative_s = 0.0;
    std::optional<double> self_s;
    std::optional<double> calls;
    std::optional<double> self_ms_per_call;
    std::optional<double> total_ms_per_call;
    std::string name;
};

struct GprofFlatProfile {
    double sample_period = 0.0;  // "Each sample counts as X seconds."
    std::vector<GprofRow> rows;
    std::vector<Reject> rejects;

    double total_seconds() const;  // last cumulative
    const GprofRow& row(const std::string& name) const;
};

// Masked fields ("xxxx") parse as missing; self times are back-filled from
// cumulative deltas and call counts from self/self_ms when derivable.
GprofFlatProfile parse_gprof(const std::string& text, bool comma_decimals = false);

struct ScaleProc {
    std::string name;
    double factor = 1.0;  // self time /= factor
};
struct SetCalls {
    std::string name;
    double calls = 0.0;
};
struct SetMsPerCall {
    std::string name;
    double ms = 0.0;
};
using GprofEdit = std::variant<ScaleProc, SetCalls, SetMsPerCall>;

struct GprofWhatIf {
    double original_seconds = 0.0;
    double new_seconds = 0.0;
    double speedup = 1.0;
};

GprofWhatIf gprof_what_if(const GprofFlatProfile& profile, const std::vector<GprofEdit>& edits);

// ---- access log ----

struct AccessLogRecord {
    std::string client;
    std::int64_t timestamp = 0;  // unix seconds (fixed offset applied)
    std::string method;
    std::string url;
    std::string protocol;
    int status = 0;
    std::uint64_t bytes = 0;  // "-" parses as 0
};

struct AccessLog {
    std::vector<AccessLogRecord> records;
    std::vector<Reject> rejects;
};

AccessLog parse_access_log(const std::string& text);

std::vector<AccessLogRecord> filter_method(const std::vector<AccessLogRecord>& records,
                                           const std::string& method);
std::vector<AccessLogRecord> filter_status(const std::vector<AccessLogRecord>& records,
                                           int lo, int hi);

struct SizeClass {
    double lower = 0.0;  // inclusive
    double upper = 0.0;  // exclusive; +inf for the last class
    std::size_t count = 0;
    double mean_bytes = 0.0;
};

// Partitions records into size classes split at `edges` (ascending).
std::vector<SizeClass> classify_by_size(const std::vector<AccessLogRecord>& records,
                                        const std::vector<double>& edges);

// ---- workload model ----

struct WorkloadClass {
    std::string name;
    double count = 0.0;         // requests inside the window
    double share_pct = 0.0;     // of all requests
    double arrival_rate = 0.0;  // 1/s
    double arrivals_per_min = 0.0;
    double interarrival = 0.0;  // s
};

struct WorkloadModel {
    std::vector<WorkloadClass> classes;
    WorkloadClass total;
};

WorkloadModel build_workload_model(const std::vector<std::pair<std::string, double>>& class_counts,
                                   double window_seconds);

// ---- top ----

struct TopProcess {
    std::map<std::string, std::string> fields;  // keyed by header column
};

struct TopSnapshot {
    double load1 = 0.0, load5 = 0.0, load15 = 0.0;
    double cpu_user = 0.0, cpu_system = 0.0, cpu_nice = 0.0, cpu_idle = 0.0;
    double mem_total_kb = 0.0, mem_used_kb = 0.0, mem_free_kb = 0.0;
    double swap_total_kb = 0.0, swap_used_kb = 0.0, swap_free_kb = 0.0;
    std::vector<TopProcess> processes;
    std::vector<Reject> rejects;

    double mem_used_pct() const;
    double cpu_busy_pct() const;  // user + system + nice
};

TopSnapshot parse_top(const std::string& text);

}  // namespace perfkit::ingest
