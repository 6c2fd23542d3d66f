#pragma once

// Hand-built cases shared by the unit tests and the acceptance binary.

#include <string>

#include "genprio/grid.hpp"

namespace testcase {

inline genprio::Bus bus(int id, int area = 1, double pd = 0.0, double qd = 0.0, double kv = 138.0) {
    genprio::Bus b;
    b.id = id;
    b.area = area;
    b.pd = pd;
    b.qd = qd;
    b.base_kv = kv;
    return b;
}

inline genprio::Branch line(const std::string& id, int from, int to, double r, double x, double b = 0.0) {
    genprio::Branch br;
    br.id = id;
    br.from_bus = from;
    br.to_bus = to;
    br.r = r;
    br.x = x;
    br.b = b;
    return br;
}

inline genprio::Generator unit(const std::string& id, int bus_id, double pgmin, double pgmax, double qgmin,
                               double qgmax, double cost = 20.0) {
    genprio::Generator g;
    g.id = id;
    g.bus_id = bus_id;
    g.type = genprio::GenType::conventional;
    g.unit_type = "CT";
    g.pgmin = pgmin;
    g.pgmax = pgmax;
    g.qgmin = qgmin;
    g.qgmax = qgmax;
    g.heat_rate = 1.0;
    g.fuel_price = cost;
    return g;
}

inline genprio::Generator renewable(const std::string& id, int bus_id, genprio::GenType type, double pgmax) {
    genprio::Generator g;
    g.id = id;
    g.bus_id = bus_id;
    g.type = type;
    g.unit_type = std::string(genprio::to_string(type));
    g.pgmax = pgmax;
    return g;
}

// Slack at bus 1 (V = 1.0), load 100 MW at bus 2 over x = 0.1 pu.
inline genprio::GridCase two_bus() {
    genprio::GridCase c;
    c.buses = {bus(1), bus(2, 1, 100.0, 0.0)};
    c.branches = {line("L12", 1, 2, 0.0, 0.1)};
    c.generators = {unit("G1", 1, 0.0, 300.0, -300.0, 300.0)};
    c.generators[0].pgmin = 0.0;
    c.sort();
    genprio::assign_slack_buses(c);
    return c;
}

// Triangle: slack at 1, PV unit at 2 holding 1.02 pu, load at 3.
inline genprio::GridCase three_bus() {
    genprio::GridCase c;
    c.buses = {bus(1), bus(2, 1, 20.0, 10.0), bus(3, 1, 150.0, 50.0)};
    c.buses[0].voltage_setpoint = 1.04;
    c.buses[1].voltage_setpoint = 1.02;
    c.branches = {line("L12", 1, 2, 0.02, 0.06, 0.03), line("L13", 1, 3, 0.08, 0.24, 0.025),
                  line("L23", 2, 3, 0.06, 0.18, 0.02)};
    c.generators = {unit("G1", 1, 0.0, 400.0, -200.0, 200.0), unit("G2", 2, 0.0, 100.0, -100.0, 100.0)};
    c.generators[1].pg = 60.0;
    c.sort();
    genprio::assign_slack_buses(c);
    return c;
}

}  // namespace testcase
