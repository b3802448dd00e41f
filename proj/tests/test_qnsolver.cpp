#include <doctest.h>

#include <cmath>
#include <limits>
#include <random>
#include <vector>

#include "perfkit/qnsolver.hpp"

using namespace perfkit;
using namespace perfkit::qnsolver;

namespace {

ClosedModel slow_disk_model() {
    return {3, 5.0, {{"cpu", StationKind::queueing, 15, 0.03},
                     {"disk", StationKind::queueing, 14, 0.5}}};
}

ClosedModel interactive_model() {
    return {1, 6.0, {{"cpu", StationKind::queueing, 32, 0.0375},
                     {"disk1", StationKind::queueing, 25, 0.02},
                     {"disk2", StationKind::queueing, 6, 0.05}}};
}

// Discrete-event simulation of a closed network with exponential services,
// FCFS queueing stations and probabilistic routing that realizes the visit
// ratios: after think, repeatedly dispatch to station i with probability
// V_i/(V+1) or exit with probability 1/(V+1).
struct SimResult {
    double response = 0.0;
    double throughput = 0.0;
};

SimResult simulate_closed(const ClosedModel& model, std::size_t target_completions,
                          unsigned seed) {
    const std::size_t k = model.stations.size();
    const std::size_t jobs = static_cast<std::size_t>(model.population);
    double vtot = 0.0;
    for (const auto& s : model.stations) vtot += s.visits;

    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    auto exp_sample = [&](double mean) {
        return mean <= 0.0 ? 0.0 : -mean * std::log(1.0 - u(rng));
    };
    auto dispatch = [&]() -> std::size_t {  // k means exit
        double x = u(rng) * (vtot + 1.0);
        for (std::size_t i = 0; i < k; ++i) {
            x -= model.stations[i].visits;
            if (x <= 0.0) return i;
        }
        return k;
    };

    constexpr double kIdle = std::numeric_limits<double>::infinity();
    std::vector<double> think_done(jobs, 0.0);        // next think completion, inf if not thinking
    std::vector<std::vector<std::size_t>> queue(k);   // FCFS queues (head in service)
    std::vector<double> service_done(k, kIdle);       // completion of the job in service
    std::vector<double> entered(jobs, 0.0);           // subsystem entry time of each job

    double now = 0.0;
    double residence = 0.0;
    std::size_t completions = 0;

    auto leave_or_queue = [&](std::size_t job) {
        // Job finished thinking or a service; route it.
        const std::size_t to = dispatch();
        if (to == k) {
            residence += now - entered[job];
            ++completions;
            think_done[job] = now + exp_sample(model.think_time);
        } else {
            queue[to].push_back(job);
            if (queue[to].size() == 1)
                service_done[to] = now + exp_sample(model.stations[to].service);
        }
    };

    for (std::size_t j = 0; j < jobs; ++j) think_done[j] = exp_sample(model.think_time);

    while (completions < target_completions) {
        double next = kIdle;
        std::size_t who = 0;
        bool is_station = false;
        for (std::size_t j = 0; j < jobs; ++j)
            if (think_done[j] < next) {
                next = think_done[j];
                who = j;
                is_station = false;
            }
        for (std::size_t s = 0; s < k; ++s)
            if (service_done[s] < next) {
                next = service_done[s];
                who = s;
                is_station = true;
            }
        now = next;
        if (is_station) {
            const std::size_t job = queue[who].front();
            queue[who].erase(queue[who].begin());
            service_done[who] = queue[who].empty()
                                    ? kIdle
                                    : now + exp_sample(model.stations[who].service);
            leave_or_queue(job);
        } else {
            think_done[who] = kIdle;
            entered[who] = now;
            leave_or_queue(who);
        }
    }
    return {residence / static_cast<double>(completions),
            static_cast<double>(completions) / now};
}

void audit_little(const SolvedNetwork& net) {
    for (const auto& s : net.stations) {
        CHECK(s.population == doctest::Approx(s.throughput * s.response_time).epsilon(1e-9));
        CHECK(s.utilization == doctest::Approx(s.throughput * s.service).epsilon(1e-9));
        CHECK(s.utilization <= 1.0 + 1e-9);
    }
}

ClosedModel random_closed_model(std::mt19937& rng) {
    std::uniform_int_distribution<int> nstations(1, 5);
    std::uniform_real_distribution<double> uv(0.5, 20.0), us(0.001, 0.5), uz(0.0, 20.0);
    ClosedModel m;
    m.think_time = uz(rng);
    const int k = nstations(rng);
    for (int i = 0; i < k; ++i)
        m.stations.push_back(
            {"st" + std::to_string(i), StationKind::queueing, uv(rng), us(rng)});
    return m;
}

}  // namespace

TEST_SUITE("qnsolver") {

TEST_CASE("solve_open: two-station reference model") {
    OpenModel m{2.0, {{"d1", StationKind::queueing, 6, 0.01},
                      {"d2", StationKind::queueing, 7, 0.02}}};
    const auto net = solve_open(m);
    CHECK(net.stations[0].utilization == doctest::Approx(0.12));
    CHECK(net.stations[1].utilization == doctest::Approx(0.28));
    CHECK(net.stations[0].response_time == doctest::Approx(0.0114).epsilon(0.005));
    CHECK(net.stations[1].response_time == doctest::Approx(0.0278).epsilon(0.002));
    CHECK(net.response_time == doctest::Approx(0.2626).epsilon(0.0002));
    CHECK(net.population == doctest::Approx(0.5253).epsilon(0.0002));
    audit_little(net);
}

TEST_CASE("solve_open: cpu and two disks") {
    OpenModel m{1.0 / 0.6, {{"cpu", StationKind::queueing, 17, 0.03},
                            {"d1", StationKind::queueing, 6, 0.04},
                            {"d2", StationKind::queueing, 10, 0.04}}};
    const auto net = solve_open(m);
    CHECK(net.response_time == doctest::Approx(5.0).epsilon(0.002));
    CHECK(net.population == doctest::Approx(8.333).epsilon(0.001));
    CHECK(net.min_response == doctest::Approx(1.15));
    CHECK(net.max_throughput == doctest::Approx(1.0 / 0.51).epsilon(0.001));
    CHECK(net.bottleneck == 0);
}

TEST_CASE("solve_open: lambda = 0 and saturation") {
    OpenModel m{0.0, {{"a", StationKind::queueing, 2, 0.1},
                      {"b", StationKind::delay, 1, 0.5}}};
    const auto net = solve_open(m);
    for (const auto& s : net.stations) CHECK(s.utilization == doctest::Approx(0.0));
    CHECK(net.response_time == doctest::Approx(0.7));  // sum of demands
    CHECK(net.population == doctest::Approx(0.0));

    m.arrival_rate = 6.0;  // bottleneck demand 0.2 -> X max 5
    try {
        solve_open(m);
        FAIL("expected saturation");
    } catch (const saturation_error& e) {
        CHECK(e.bottleneck_index == 0);
        CHECK(e.x_max == doctest::Approx(5.0));
    }
}

TEST_CASE("delay stations respond in S and never queue") {
    OpenModel m{1.5, {{"cpu", StationKind::queueing, 1, 0.3},
                      {"terminals", StationKind::delay, 1, 2.0}}};
    const auto net = solve_open(m);
    CHECK(net.stations[1].response_time == doctest::Approx(2.0));
    CHECK(net.stations[0].response_time == doctest::Approx(0.3 / (1 - 0.45)));
}

TEST_CASE("solve_mva: three-job reference trace") {
    const auto net = solve_mva(slow_disk_model(), true);
    REQUIRE(net.trace.size() == 3);
    // n = 1
    CHECK(net.trace[0].station_response[0] == doctest::Approx(0.0300).epsilon(0.0001));
    CHECK(net.trace[0].station_response[1] == doctest::Approx(0.5000).epsilon(0.0001));
    CHECK(net.trace[0].response_time == doctest::Approx(7.4500).epsilon(0.0001));
    CHECK(net.trace[0].throughput == doctest::Approx(0.0803).epsilon(0.001));
    CHECK(net.trace[0].station_population[0] == doctest::Approx(0.0361).epsilon(0.002));
    CHECK(net.trace[0].station_population[1] == doctest::Approx(0.5622).epsilon(0.0001));
    // n = 2
    CHECK(net.trace[1].station_response[0] == doctest::Approx(0.0311).epsilon(0.002));
    CHECK(net.trace[1].station_response[1] == doctest::Approx(0.7811).epsilon(0.0001));
    CHECK(net.trace[1].response_time == doctest::Approx(11.4020).epsilon(0.0001));
    CHECK(net.trace[1].throughput == doctest::Approx(0.1219).epsilon(0.001));
    CHECK(net.trace[1].station_population[1] == doctest::Approx(1.3335).epsilon(0.0001));
    // n = 3
    CHECK(net.trace[2].response_time == doctest::Approx(16.8098).epsilon(0.0001));
    CHECK(net.trace[2].throughput == doctest::Approx(0.1376).epsilon(0.001));
    CHECK(net.trace[2].station_population[1] == doctest::Approx(2.2468).epsilon(0.0001));
    CHECK(net.response_time == doctest::Approx(16.8098).epsilon(0.0001));
    audit_little(net);
}

TEST_CASE("solve_mva: ten interactive users") {
    ClosedModel m{10, 8.0, {{"cpu", StationKind::queueing, 8, 0.03},
                            {"disk", StationKind::queueing, 7, 0.1}}};
    const auto net = solve_mva(m, true);
    CHECK(net.trace[0].response_time == doctest::Approx(0.9400).epsilon(0.0001));
    CHECK(net.trace[0].throughput == doctest::Approx(0.1119).epsilon(0.001));
    CHECK(net.response_time == doctest::Approx(1.9511).epsilon(0.0001));
    CHECK(net.throughput == doctest::Approx(1.0049).epsilon(0.0001));
}

TEST_CASE("solve_mva: degenerate cases") {
    ClosedModel single{1, 0.0, {{"cpu", StationKind::queueing, 1, 0.25}}};
    const auto net = solve_mva(single);
    CHECK(net.response_time == doctest::Approx(0.25));
    CHECK(net.throughput == doctest::Approx(4.0));

    ClosedModel empty{0, 5.0, {{"cpu", StationKind::queueing, 1, 0.25}}};
    const auto zero = solve_mva(empty);
    CHECK_FALSE(zero.response_defined);
    CHECK(zero.throughput == doctest::Approx(0.0));
    CHECK(zero.population == doctest::Approx(0.0));
}

TEST_CASE("MVA matches a discrete-event simulation within 2%") {
    std::mt19937 rng(2024);
    std::uniform_real_distribution<double> uv(0.5, 4.0), us(0.05, 0.5), uz(0.0, 3.0);
    std::uniform_int_distribution<int> un(1, 3), uk(1, 2);
    for (int trial = 0; trial < 3; ++trial) {
        ClosedModel m;
        m.population = un(rng);
        m.think_time = uz(rng);
        const int k = uk(rng);
        for (int i = 0; i < k; ++i)
            m.stations.push_back({"st" + std::to_string(i), StationKind::queueing, uv(rng), us(rng)});
        const auto exact = solve_mva(m);
        const auto sim = simulate_closed(m, 1000000, 99 + trial);
        CHECK(sim.response == doctest::Approx(exact.response_time).epsilon(0.02));
        CHECK(sim.throughput == doctest::Approx(exact.throughput).epsilon(0.02));
    }
}

TEST_CASE("bottleneck") {
    std::vector<Station> s = {{"a", StationKind::queueing, 1, 1.2},
                              {"b", StationKind::queueing, 1, 0.5},
                              {"c", StationKind::queueing, 1, 0.3}};
    const auto b = bottleneck(s);
    CHECK(b.index == 0);
    CHECK(b.demand == doctest::Approx(1.2));
    CHECK(b.tie_set.size() == 1);

    std::vector<Station> tie = {{"a", StationKind::queueing, 2, 0.5},
                                {"b", StationKind::queueing, 1, 1.0}};
    CHECK(bottleneck(tie).tie_set.size() == 2);

    // Demands {2.75, 0.8}: the processor dominates.
    std::vector<Station> web = {{"cpu", StationKind::queueing, 11, 0.25},
                                {"disk", StationKind::queueing, 10, 0.08}};
    CHECK(bottleneck(web).index == 0);

    std::vector<Station> think_only = {{"cpu", StationKind::queueing, 1, 0.1},
                                       {"terminals", StationKind::delay, 1, 10.0}};
    CHECK(bottleneck(think_only, false).index == 0);
}

TEST_CASE("asymptotic bounds: saturation point moves with a cpu upgrade") {
    auto m = interactive_model();
    auto b = asymptotic_bounds(m);
    CHECK(b.total_demand == doctest::Approx(2.0));
    CHECK(b.bottleneck_demand == doctest::Approx(1.2));
    CHECK(b.saturation_point_int == 7);
    CHECK(b.response_opt(1) == doctest::Approx(2.0));
    CHECK(b.response_opt(10) == doctest::Approx(6.0));
    CHECK(b.throughput_opt(100) == doctest::Approx(1.0 / 1.2));

    m.stations[0].service = 0.01875;  // twice as fast
    b = asymptotic_bounds(m);
    CHECK(b.total_demand == doctest::Approx(1.4));
    CHECK(b.saturation_point_int == 13);
}

TEST_CASE("asymptotic bounds: population cap under a response target") {
    ClosedModel m{1, 18.0, {{"cpu", StationKind::queueing, 1, 10},
                            {"d1", StationKind::queueing, 1, 12},
                            {"d2", StationKind::queueing, 1, 8}}};
    const auto b = asymptotic_bounds(m);
    CHECK(b.saturation_point_int == 4);
    // Largest N with R_opt below 60 s.
    long max_n = 0;
    for (long n = 1; n <= 100; ++n)
        if (b.response_opt(static_cast<double>(n)) < 60.0) max_n = n;
    CHECK(max_n == 6);
}

TEST_CASE("asymptotic bounds: degenerate single station") {
    ClosedModel m{5, 0.0, {{"only", StationKind::queueing, 1, 2.0}}};
    const auto b = asymptotic_bounds(m);
    CHECK(b.saturation_point_int == 1);
    for (double n = 1; n <= 4; ++n) CHECK(b.throughput_opt(n) == doctest::Approx(0.5));
}

TEST_CASE("open bounds") {
    std::vector<Station> three = {{"cpu", StationKind::queueing, 16, 0.01},
                                  {"d1", StationKind::queueing, 7, 0.02},
                                  {"d2", StationKind::queueing, 8, 0.03}};
    const auto b = open_bounds(three);
    CHECK(b.min_response == doctest::Approx(0.54));
    CHECK(b.max_arrival_rate == doctest::Approx(4.167).epsilon(0.001));

    std::vector<Station> txn = {{"cpu", StationKind::queueing, 16, 0.020},
                                {"disk", StationKind::queueing, 7, 0.030},
                                {"cdrom", StationKind::queueing, 8, 0.010}};
    const auto b16 = open_bounds(txn);
    CHECK(b16.min_response == doctest::Approx(0.61));
    CHECK(b16.max_arrival_rate == doctest::Approx(3.125));

    std::vector<Station> one = {{"only", StationKind::queueing, 2, 0.2}};
    CHECK(open_bounds(one).min_response == doctest::Approx(0.4));
    CHECK(open_bounds(one).max_arrival_rate == doctest::Approx(2.5));
}

TEST_CASE("MVA is dominated by the asymptotic bounds (random models)") {
    std::mt19937 rng(55);
    for (int trial = 0; trial < 100; ++trial) {
        auto m = random_closed_model(rng);
        const auto b = asymptotic_bounds(m);
        for (long n = 1; n <= 50; ++n) {
            m.population = n;
            const auto net = solve_mva(m);
            CHECK(net.response_time >= b.response_opt(static_cast<double>(n)) - 1e-9);
            CHECK(net.throughput <= b.throughput_opt(static_cast<double>(n)) + 1e-9);
        }
    }
}

TEST_CASE("MVA monotonicity in N") {
    std::mt19937 rng(56);
    for (int trial = 0; trial < 30; ++trial) {
        auto m = random_closed_model(rng);
        double prev_r = 0.0, prev_x = 0.0;
        for (long n = 1; n <= 30; ++n) {
            m.population = n;
            const auto net = solve_mva(m);
            CHECK(net.response_time >= prev_r - 1e-9);
            CHECK(net.throughput >= prev_x - 1e-9);
            prev_r = net.response_time;
            prev_x = net.throughput;
        }
    }
}

TEST_CASE("balanced bounds sandwich the MVA solution") {
    const ClosedModel base = interactive_model();
    const auto bb = balanced_bounds(base);
    for (long n = 1; n <= 20; ++n) {
        ClosedModel m = base;
        m.population = n;
        const auto net = solve_mva(m);
        const double nn = static_cast<double>(n);
        CHECK(net.response_time >= bb.response_lower(nn) - 1e-9);
        CHECK(net.response_time <= bb.response_upper(nn) + 1e-9);
        CHECK(net.throughput >= bb.throughput_lower(nn) - 1e-9);
        CHECK(net.throughput <= bb.throughput_upper(nn) + 1e-9);
    }

    std::mt19937 rng(57);
    for (int trial = 0; trial < 50; ++trial) {
        auto m = random_closed_model(rng);
        const auto rb = balanced_bounds(m);
        for (long n = 1; n <= 25; ++n) {
            m.population = n;
            const auto net = solve_mva(m);
            const double nn = static_cast<double>(n);
            CHECK(net.response_time >= rb.response_lower(nn) - 1e-9);
            CHECK(net.response_time <= rb.response_upper(nn) + 1e-9);
            CHECK(net.throughput >= rb.throughput_lower(nn) - 1e-9);
            CHECK(net.throughput <= rb.throughput_upper(nn) + 1e-9);
        }
    }
}

TEST_CASE("balanced bounds degenerate forms") {
    // N = 1: both response bounds collapse to D.
    ClosedModel m = interactive_model();
    const auto bb = balanced_bounds(m);
    CHECK(bb.response_lower(1) == doctest::Approx(bb.total_demand));
    CHECK(bb.response_upper(1) == doctest::Approx(bb.total_demand));
    // K = 1, batch: both bounds equal N*D (single queue).
    ClosedModel one{1, 0.0, {{"only", StationKind::queueing, 1, 0.4}}};
    const auto ob = balanced_bounds(one);
    for (double n = 1; n <= 10; ++n) {
        CHECK(ob.response_lower(n) == doctest::Approx(n * 0.4));
        CHECK(ob.response_upper(n) == doctest::Approx(n * 0.4));
    }
    ClosedModel delay{1, 1.0, {{"terms", StationKind::delay, 1, 1.0}}};
    CHECK_THROWS_AS(balanced_bounds(delay), domain_error);
}

TEST_CASE("MVA approaches the open solution at matched load") {
    // Scale N and Z together so lambda = N/(Z+R) stays near 1.0, far from
    // saturation; the closed R must approach the open R monotonically.
    OpenModel open{1.0, {{"cpu", StationKind::queueing, 2, 0.1},
                         {"disk", StationKind::queueing, 1, 0.2}}};
    const double open_r = solve_open(open).response_time;
    double prev_gap = std::numeric_limits<double>::infinity();
    for (long n : {2L, 8L, 32L, 128L}) {
        ClosedModel closed{n, 0.0, open.stations};
        closed.think_time = static_cast<double>(n) / 1.0 - open_r;  // N/X - R
        const auto net = solve_mva(closed);
        const double gap = std::abs(net.response_time - open_r);
        CHECK(gap <= prev_gap + 1e-9);
        prev_gap = gap;
    }
    CHECK(prev_gap < 0.05 * open_r);
}

TEST_CASE("what_if edits") {
    // Double the cpu speed, then re-solve the open model.
    OpenModel m{1.0 / 3.0, {{"cpu", StationKind::queueing, 11, 0.25},
                            {"disk", StationKind::queueing, 10, 0.08}}};
    const auto upgraded = what_if(m, {ScaleService{"cpu", 2.0}});
    CHECK(solve_open(upgraded).response_time == doctest::Approx(3.63).epsilon(0.002));
    CHECK(m.stations[0].service == doctest::Approx(0.25));  // original untouched

    // Replacement disk with S = 0.07 under MVA(N=15, Z=6).
    ClosedModel c{15, 6.0, {{"cpu", StationKind::queueing, 13, 0.01},
                            {"disk", StationKind::queueing, 10, 0.3},
                            {"cdrom", StationKind::queueing, 2, 0.1}}};
    CHECK(solve_mva(c).response_time == doctest::Approx(39.0).epsilon(0.001));
    ClosedModel newdisk = c;
    newdisk.stations[1].service = 0.07;
    CHECK(solve_mva(newdisk).response_time == doctest::Approx(4.7497).epsilon(0.001));

    // Split the disk into two twice-as-fast halves.
    const auto split = what_if(c, {SplitStation{"disk", 2, 2.0}});
    CHECK(split.stations.size() == 4);
    CHECK(solve_mva(split).response_time == doctest::Approx(6.9646).epsilon(0.001));

    // Balance the storage visits instead.
    const auto balanced = what_if(c, {SetVisits{"disk", 3.0}, SetVisits{"cdrom", 9.0}});
    CHECK(solve_mva(balanced).response_time == doctest::Approx(9.1496).epsilon(0.001));

    const auto same = what_if(c, {});
    CHECK(same.stations.size() == c.stations.size());
    for (std::size_t i = 0; i < c.stations.size(); ++i) {
        CHECK(same.stations[i].visits == c.stations[i].visits);
        CHECK(same.stations[i].service == c.stations[i].service);
    }
    CHECK_THROWS_AS(what_if(c, {ScaleService{"nosuch", 2.0}}), domain_error);
}

TEST_CASE("ethernet transfer demand per size class") {
    struct Row {
        double size;
        std::size_t frames;
        double bytes;
        double ms;
    };
    const Row rows[] = {{114, 1, 382, 0.0305},
                        {617, 1, 885, 0.0708},
                        {14486, 10, 14934, 1.1947},
                        {153845, 103, 155967, 12.4773},
                        {1319793, 880, 1335901, 106.872}};
    for (const auto& r : rows) {
        const auto d = ethernet_transfer_demand(170, r.size, 100e6);
        CHECK(d.response_frames == r.frames);
        CHECK(d.total_bytes == doctest::Approx(r.bytes));
        CHECK(d.demand_seconds * 1e3 == doctest::Approx(r.ms).epsilon(0.001));
    }
    const auto empty = ethernet_transfer_demand(170, 0, 100e6);
    CHECK(empty.total_bytes == doctest::Approx(170 + 58 + 40));
}

TEST_CASE("csma collision overhead") {
    CHECK(csma_collision_overhead(10, 1, 5.12e-6) == doctest::Approx(0.0));
    // k = 2: A = 0.5, C = 1 -> one slot per frame.
    CHECK(csma_collision_overhead(1, 2, 5.12e-6) == doctest::Approx(5.12e-6));
    // k -> inf: C -> e - 1.
    CHECK(csma_collision_overhead(1, 1000000, 1.0) == doctest::Approx(std::exp(1.0) - 1.0).epsilon(1e-4));
    CHECK_THROWS_AS(csma_collision_overhead(1, 0, 1.0), domain_error);
}

}  // TEST_SUITE
