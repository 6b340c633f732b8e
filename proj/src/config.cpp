// SPDX-License-Identifier: Apache-2.0
//
// riscap - dimensioning toolkit for RIS-assisted multi-user MISO downlinks
// Copyright (C) 2026 The riscap authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#include "riscap/config.hpp"
#include "riscap/error.hpp"

#include <toml.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

namespace riscap
{
namespace
{

class Section
{
  public:
    Section(const toml::table *table, std::string name, std::string source)
        : table_(table), name_(std::move(name)), source_(std::move(source))
    {
    }

    bool present() const { return table_ != nullptr; }

    const toml::node *find(const std::string &key, bool required)
    {
        used_.insert(key);
        const toml::node *node = table_ ? table_->get(key) : nullptr;
        if (!node && required)
            throw Error(ErrorKind::config, source_ + ": missing required key '" + name_ + "." +
                                               key + "'");
        return node;
    }

    [[noreturn]] void fail(const toml::node &node, const std::string &key,
                           const std::string &message) const
    {
        std::ostringstream out;
        out << source_ << ":" << node.source().begin.line << ": key '" << name_ << "." << key
            << "': " << message;
        throw Error(ErrorKind::config, out.str());
    }

    double number(const std::string &key, bool required, double fallback)
    {
        const toml::node *node = find(key, required);
        if (!node)
            return fallback;
        if (!node->is_number())
            fail(*node, key, "expected a number");
        return *node->value<double>();
    }

    std::int64_t integer(const std::string &key, bool required, std::int64_t fallback)
    {
        const toml::node *node = find(key, required);
        if (!node)
            return fallback;
        return integer_of(*node, key);
    }

    std::string text(const std::string &key, bool required, const std::string &fallback,
                     const std::set<std::string> &allowed)
    {
        const toml::node *node = find(key, required);
        if (!node)
            return fallback;
        if (!node->is_string())
            fail(*node, key, "expected a string");
        std::string value = *node->value<std::string>();
        if (!allowed.count(value))
        {
            std::string list;
            for (const auto &a : allowed)
                list += (list.empty() ? "" : ", ") + a;
            fail(*node, key, "unknown value '" + value + "' (expected one of: " + list + ")");
        }
        return value;
    }

    std::vector<double> numbers(const std::string &key, bool required)
    {
        const toml::node *node = find(key, required);
        std::vector<double> out;
        if (!node)
            return out;
        const toml::array *arr = node->as_array();
        if (!arr)
            fail(*node, key, "expected an array of numbers");
        for (const auto &item : *arr)
        {
            if (!item.is_number())
                fail(item, key, "expected an array of numbers");
            out.push_back(*item.value<double>());
        }
        return out;
    }

    // Scalar, or array when `may_list` is set.
    GridValue grid(const std::string &key, bool required, double fallback, bool may_list,
                   bool integral)
    {
        GridValue g;
        const toml::node *node = find(key, required);
        if (!node)
        {
            g.values = {fallback};
            return g;
        }
        auto take = [&](const toml::node &item) {
            if (!item.is_number())
                fail(item, key, "expected a number");
            g.values.push_back(integral ? static_cast<double>(integer_of(item, key))
                                        : *item.value<double>());
        };
        if (const toml::array *arr = node->as_array())
        {
            if (!may_list)
                fail(*node, key, "only the swept key may be an array");
            if (arr->empty())
                fail(*node, key, "array is empty");
            for (const auto &item : *arr)
                take(item);
            g.listed = true;
        }
        else
        {
            take(*node);
        }
        return g;
    }

    void reject_unknown() const
    {
        if (!table_)
            return;
        for (const auto &[key, node] : *table_)
        {
            const std::string k(key.str());
            if (!used_.count(k))
                fail(node, k, "unknown key");
        }
    }

  private:
    std::int64_t integer_of(const toml::node &node, const std::string &key) const
    {
        if (node.is_integer())
            return *node.value<std::int64_t>();
        if (node.is_floating_point())
        {
            const double v = *node.value<double>();
            if (std::isfinite(v) && v == std::floor(v) && std::abs(v) < 9.0e15)
                return static_cast<std::int64_t>(v);
        }
        fail(node, key, "expected an integer");
    }

    const toml::table *table_;
    std::string name_;
    std::string source_;
    std::set<std::string> used_;
};

std::string fmt(double v)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    std::string s(buf);
    if (s == "-nan")
        s = "nan";
    return s;
}

std::string fmt_grid(const GridValue &g)
{
    if (!g.listed)
        return fmt(g.values.front());
    std::string s = "[";
    for (std::size_t i = 0; i < g.values.size(); ++i)
        s += (i ? ", " : "") + fmt(g.values[i]);
    return s + "]";
}

std::string fmt_list(const std::vector<double> &v)
{
    std::string s = "[";
    for (std::size_t i = 0; i < v.size(); ++i)
        s += (i ? ", " : "") + fmt(v[i]);
    return s + "]";
}

std::string quote(const std::string &s) { return "\"" + s + "\""; }

} // namespace

RunConfig parse_config(const std::string &text, const std::string &source_name)
{
    toml::table doc;
    try
    {
        doc = toml::parse(text, source_name);
    }
    catch (const toml::parse_error &e)
    {
        std::ostringstream out;
        out << source_name << ":" << e.source().begin.line << ": " << e.description();
        throw Error(ErrorKind::config, out.str());
    }

    static const std::set<std::string> sections = {"layout",     "panel", "budget", "system",
                                                   "experiment", "plan",  "ratio"};
    for (const auto &[key, node] : doc)
    {
        const std::string name(key.str());
        if (!sections.count(name))
        {
            std::ostringstream out;
            out << source_name << ":" << node.source().begin.line << ": unknown section '"
                << name << "'";
            throw Error(ErrorKind::config, out.str());
        }
        if (!node.is_table())
        {
            std::ostringstream out;
            out << source_name << ":" << node.source().begin.line << ": '" << name
                << "' must be a section";
            throw Error(ErrorKind::config, out.str());
        }
    }

    auto section = [&](const char *name) {
        return Section(doc[name].as_table(), name, source_name);
    };
    RunConfig c;

    // The sweep choice decides which key may hold a list.
    Section experiment = section("experiment");
    c.trials = static_cast<int>(experiment.integer("trials", true, 100));
    c.root_seed = static_cast<std::uint64_t>(experiment.integer("root_seed", true, 0));
    c.sweep = experiment.text("sweep", true, "none", {"none", "N", "P", "M", "eta"});
    c.synthesis = experiment.text("synthesis", false, "clt", {"clt", "exact"});
    c.fading = experiment.text("fading", false, "gaussian",
                               {"gaussian", "uniform_phase", "bernoulli"});
    c.workers = static_cast<int>(experiment.integer("workers", false, 1));
    if (c.trials < 1)
        experiment.fail(*experiment.find("trials", true), "trials", "must be at least 1");
    if (c.workers < 1)
        experiment.fail(*experiment.find("workers", true), "workers", "must be at least 1");

    Section layout = section("layout");
    c.layout.bs_ris_distance = layout.number("D_B", true, 0.0);
    c.layout.bs_area_distance = layout.number("D", true, 0.0);
    c.layout.ris_area_gap = layout.number("D_u", true, 0.0);
    c.layout.area_side = layout.number("L", true, 0.0);
    c.layout.bs_height = layout.number("bs_height", true, 0.0);
    c.layout.ris_height = layout.number("ris_height", true, 0.0);
    c.layout.num_users = static_cast<int>(layout.integer("K", true, 1));
    c.layout.user_seed = static_cast<std::uint64_t>(layout.integer("user_seed", true, 1));
    if (c.layout.num_users < 1)
        layout.fail(*layout.find("K", true), "K", "must be at least 1");

    Section panel = section("panel");
    c.num_elements = panel.grid("N", true, 1.0, c.sweep == "N", true);
    for (double n : c.num_elements.values)
        if (n < 1.0)
            panel.fail(*panel.find("N", true), "N", "must be a positive integer");
    c.element_width = panel.number("a", true, 0.0);
    c.element_height = panel.number("b", true, 0.0);
    c.reflection_amplitude = panel.number("gamma", true, 1.0);
    c.phase_mode = panel.text("phase_mode", true, "zero", {"zero", "random", "explicit"});
    c.phase_seed = static_cast<std::uint64_t>(panel.integer("phase_seed", false, 0));
    c.phases = panel.numbers("phases", c.phase_mode == "explicit");
    if (c.phase_mode == "explicit" && c.num_elements.values.size() == 1 &&
        c.phases.size() != static_cast<std::size_t>(c.num_elements.values.front()))
        panel.fail(*panel.find("phases", true), "phases", "length must equal N");

    Section budget = section("budget");
    c.power_dbm = budget.grid("P_dBm", true, 0.0, c.sweep == "P", false);
    c.noise_dbm = budget.number("noise_dBm", true, 0.0);
    c.allocation = budget.text("allocation", true, "uniform", {"uniform", "waterfill"});

    Section system = section("system");
    c.num_antennas = system.grid("M", true, 1.0, c.sweep == "M", true);
    c.frequency_ghz = system.number("f_GHz", true, 0.0);
    c.antenna_gain_db = system.number("A_dB", true, 0.0);

    Section plan = section("plan");
    c.has_plan = plan.present();
    if (c.has_plan)
    {
        c.eta = plan.grid("eta", c.sweep == "eta", 0.75, c.sweep == "eta", false);
        c.plan_method = plan.text("method", false, "search", {"search", "closed-form"});
        c.search_cap = plan.number("search_cap", false, 1e10);
    }
    else if (c.sweep == "eta")
    {
        throw Error(ErrorKind::config, source_name + ": missing required key 'plan.eta'");
    }

    Section ratio = section("ratio");
    c.mu_list = ratio.numbers("mu_list", false);

    for (const Section *s : {&experiment, &layout, &panel, &budget, &system, &plan, &ratio})
        s->reject_unknown();
    return c;
}

RunConfig load_config(const std::string &path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw Error(ErrorKind::config, path + ": cannot open config file");
    std::ostringstream text;
    text << in.rdbuf();
    return parse_config(text.str(), path);
}

std::string echo_config(const RunConfig &c)
{
    std::ostringstream o;
    o << "[layout]\n"
      << "D_B = " << fmt(c.layout.bs_ris_distance) << "\n"
      << "D = " << fmt(c.layout.bs_area_distance) << "\n"
      << "D_u = " << fmt(c.layout.ris_area_gap) << "\n"
      << "L = " << fmt(c.layout.area_side) << "\n"
      << "bs_height = " << fmt(c.layout.bs_height) << "\n"
      << "ris_height = " << fmt(c.layout.ris_height) << "\n"
      << "K = " << c.layout.num_users << "\n"
      << "user_seed = " << c.layout.user_seed << "\n\n";
    o << "[panel]\n"
      << "N = " << fmt_grid(c.num_elements) << "\n"
      << "a = " << fmt(c.element_width) << "\n"
      << "b = " << fmt(c.element_height) << "\n"
      << "gamma = " << fmt(c.reflection_amplitude) << "\n"
      << "phase_mode = " << quote(c.phase_mode) << "\n"
      << "phase_seed = " << c.phase_seed << "\n";
    if (c.phase_mode == "explicit")
        o << "phases = " << fmt_list(c.phases) << "\n";
    o << "\n[budget]\n"
      << "P_dBm = " << fmt_grid(c.power_dbm) << "\n"
      << "noise_dBm = " << fmt(c.noise_dbm) << "\n"
      << "allocation = " << quote(c.allocation) << "\n\n";
    o << "[system]\n"
      << "M = " << fmt_grid(c.num_antennas) << "\n"
      << "f_GHz = " << fmt(c.frequency_ghz) << "\n"
      << "A_dB = " << fmt(c.antenna_gain_db) << "\n\n";
    o << "[experiment]\n"
      << "trials = " << c.trials << "\n"
      << "root_seed = " << c.root_seed << "\n"
      << "sweep = " << quote(c.sweep) << "\n"
      << "synthesis = " << quote(c.synthesis) << "\n"
      << "fading = " << quote(c.fading) << "\n"
      << "workers = " << c.workers << "\n";
    if (c.has_plan)
    {
        o << "\n[plan]\n"
          << "eta = " << fmt_grid(c.eta) << "\n"
          << "method = " << quote(c.plan_method) << "\n"
          << "search_cap = " << fmt(c.search_cap) << "\n";
    }
    if (!c.mu_list.empty())
        o << "\n[ratio]\nmu_list = " << fmt_list(c.mu_list) << "\n";
    return o.str();
}

SweepVariable RunConfig::sweep_variable() const
{
    if (sweep == "N")
        return SweepVariable::num_elements;
    if (sweep == "P")
        return SweepVariable::power_dbm;
    if (sweep == "M")
        return SweepVariable::num_antennas;
    if (sweep == "eta")
        return SweepVariable::target_ratio;
    return SweepVariable::none;
}

std::uint64_t RunConfig::first_num_elements() const
{
    return static_cast<std::uint64_t>(num_elements.values.front());
}

int RunConfig::first_num_antennas() const
{
    return static_cast<int>(num_antennas.values.front());
}

Scenario RunConfig::scenario() const { return scenario(first_num_antennas()); }

Scenario RunConfig::scenario(int m) const
{
    return build_layout(layout, frequency_ghz * 1e9, db_to_linear(antenna_gain_db), m,
                        layout.num_users);
}

RisPanel RunConfig::panel(std::uint64_t n) const
{
    RisPanel p;
    p.num_elements = n;
    p.element_width = element_width;
    p.element_height = element_height;
    p.reflection_amplitude = reflection_amplitude;
    if (phase_mode == "random")
        p.phases = PhaseUniformRandom{phase_seed};
    else if (phase_mode == "explicit")
        p.phases = PhaseExplicit{phases};
    return p;
}

LinkBudget RunConfig::budget() const
{
    LinkBudget b;
    b.transmit_power = dbm_to_watts(power_dbm.values.front());
    b.noise_power = dbm_to_watts(noise_dbm);
    b.allocation = uniform_power(layout.num_users);
    return b;
}

ExperimentConfig RunConfig::experiment() const
{
    ExperimentConfig e;
    e.trials = trials;
    e.root_seed = root_seed;
    e.workers = workers;
    e.sweep_variable = sweep_variable();
    switch (e.sweep_variable)
    {
    case SweepVariable::num_elements:
        e.sweep_grid = num_elements.values;
        break;
    case SweepVariable::power_dbm:
        e.sweep_grid = power_dbm.values;
        break;
    case SweepVariable::num_antennas:
        e.sweep_grid = num_antennas.values;
        break;
    case SweepVariable::target_ratio:
        e.sweep_grid = eta.values;
        break;
    case SweepVariable::none:
        break;
    }
    e.synthesis.mode = synthesis == "exact" ? SynthesisMode::exact_sum : SynthesisMode::clt_shortcut;
    if (fading == "uniform_phase")
        e.synthesis.fading.kind = FadingKind::uniform_phase;
    else if (fading == "bernoulli")
        e.synthesis.fading.kind = FadingKind::real_bernoulli;
    e.allocation = allocation == "waterfill" ? AllocationMode::waterfill : AllocationMode::uniform;
    return e;
}

} // namespace riscap
