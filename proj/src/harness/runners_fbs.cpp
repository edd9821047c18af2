// Copyright 2026 The floqsim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include <cmath>
#include <bit>
#include <numbers>
#include <sstream>

#include "common.hpp"

namespace floq::harness::detail {

namespace {

// Ideal value of measuring `basis` on eigenstate e (0 when the bases differ).
int ideal_value(const Eigenstate &e, char basis) { return e.basis == basis ? e.sign : 0; }

// Sign a Pauli gate imprints on an eigenstate's expectation in its own basis.
int pauli_flip(char gate, char basis) { return gate == 'I' || gate == basis ? 1 : -1; }

struct Series {
    std::vector<double> r, y, e;
};

json decay_fits(const Series &s, bool exact) {
    json j;
    if (s.r.size() >= 3) {
        j["all_rounds"] = fit_json(fit_exp_decay(s.r, s.y, exact ? std::vector<double>{} : s.e));
    } else {
        j["all_rounds"] = nullptr;
    }
    Series sub;
    for (std::size_t k = 0; k < s.r.size(); k++) {
        if ((int)s.r[k] % 4 == 0) {
            sub.r.push_back(s.r[k]), sub.y.push_back(s.y[k]), sub.e.push_back(s.e[k]);
        }
    }
    if (sub.r.size() >= 3) {
        j["every_4th_round"] = fit_json(fit_exp_decay(sub.r, sub.y, exact ? std::vector<double>{} : sub.e));
    } else {
        j["every_4th_round"] = nullptr;
    }
    return j;
}

}  // namespace

RunOutput run_encode_fidelity(const Config &cfg) {
    RunOutput out;
    out.csv.header = {"state", "ft", "fidelity_raw", "fidelity_detected", "retention"};
    json states = json::array();
    double sum_raw = 0, sum_det = 0;
    auto ls = labels(cfg);
    for (std::size_t i = 0; i < ls.size(); i++) {
        ExperimentSpec spec;
        spec.state = ls[i];
        spec.rounds = cfg.rounds;
        spec.lowering = cfg.lowering;
        Tomography t = tomography(cfg, spec, sub_seed(cfg.seed, i), cfg.noise);
        Eigen::Vector4cd target = product_state(ls[i]);
        auto rho_raw = reconstruct(t.raw), rho_det = reconstruct(t.kept);
        double f_raw = tomo::state_fidelity(rho_raw, target), f_det = tomo::state_fidelity(rho_det, target);
        sum_raw += f_raw / ls.size();
        sum_det += f_det / ls.size();
        json s;
        s["state"] = ls[i].str();
        s["fault_tolerant"] = t.ft_encoding;
        s["fidelity_raw"] = f_raw;
        s["fidelity_detected"] = f_det;
        s["retention"] = t.retention;
        s["exact"] = t.exact;
        s["rho_detected"] = matrix_json(rho_det);
        states.push_back(s);
        out.csv.rows.push_back({ls[i].str(), t.ft_encoding ? "1" : "0", num(f_raw), num(f_det), num(t.retention)});
    }
    out.json["states"] = states;
    out.json["mean_fidelity_raw"] = sum_raw;
    out.json["mean_fidelity_detected"] = sum_det;
    return out;
}

RunOutput run_fbs_memory(const Config &cfg) {
    RunOutput out;
    out.csv.header = {"state", "round", "static_raw", "static_detected", "dynamical_raw",
                      "dynamical_detected", "joint_raw", "joint_detected", "kept_fraction", "retention"};
    json states = json::array();
    auto ls = labels(cfg);
    for (std::size_t i = 0; i < ls.size(); i++) {
        const StateLabel &label = ls[i];
        std::string basis = cfg.get_string("basis", std::string{label.s.basis, label.d.basis});
        if (basis.size() != 2 || std::string("XYZ").find(basis[0]) == std::string::npos ||
            std::string("XYZ").find(basis[1]) == std::string::npos) {
            throw ConfigError("key 'basis' must be two letters from X, Y, Z");
        }
        int ideal[3] = {ideal_value(label.s, basis[0]), ideal_value(label.d, basis[1]), 0};
        ideal[2] = ideal[0] * ideal[1];
        const char *names[3] = {"static", "dynamical", "joint"};
        Series raw[3], det[3];
        std::vector<double> kept_fraction;
        json rounds = json::array();
        bool exact = false, ambiguous = false;
        for (int r = 0; r <= cfg.rounds; r++) {
            ExperimentSpec spec;
            spec.state = label;
            spec.rounds = r;
            spec.basis_s = basis[0];
            spec.basis_d = basis[1];
            spec.lowering = cfg.lowering;
            Measured m = measure(cfg, spec, sub_seed(cfg.seed, i, r), cfg.noise);
            const Tally &t = m.tally;
            exact = t.exact;
            ambiguous = ambiguous || m.ambiguous;
            json row;
            row["round"] = r;
            for (int k = 0; k < 3; k++) {
                double mr = t.mean_raw(k), md = t.mean_kept(k);
                row[names[k]] = {{"raw", estimate(mr, t.error(mr, t.total))},
                                 {"detected", estimate(md, t.error(md, t.kept))}};
                if (ideal[k] != 0) {
                    raw[k].r.push_back(r), raw[k].y.push_back(ideal[k] * mr), raw[k].e.push_back(t.error(mr, t.total));
                    det[k].r.push_back(r), det[k].y.push_back(ideal[k] * md), det[k].e.push_back(t.error(md, t.kept));
                }
            }
            row["kept_fraction"] = t.retention();
            kept_fraction.push_back(t.retention());
            rounds.push_back(row);
        }
        // Retention: shots with no detector fired through round r of one
        // longest run, so the surviving sets are nested.
        std::vector<double> retention(cfg.rounds + 1, 1.0);
        {
            ExperimentSpec spec;
            spec.state = label;
            spec.rounds = cfg.rounds;
            spec.basis_s = basis[0];
            spec.basis_d = basis[1];
            spec.lowering = cfg.lowering;
            CompiledExperiment exp = compile_experiment(code(), spec);
            if (exact) {
                for (int r = 0; r <= cfg.rounds; r++) {
                    std::vector<Parity> det_r;
                    for (const auto &d : exp.detectors) {
                        if (d.round <= r) det_r.push_back(d.parity);
                    }
                    retention[r] = tally_exact(exp.circuit, det_r, {}).retention();
                }
            } else {
                std::vector<Parity> ps;
                for (const auto &d : exp.detectors) ps.push_back(d.parity);
                SampleOptions so;
                so.backend = resolve_backend(exp.circuit, cfg.backend);
                so.seed = sub_seed(cfg.seed, i, 1000);
                ShotTable tab = sample_parities(exp.circuit, cfg.noise, ps, cfg.shots, so);
                std::vector<uint64_t> alive = tab.valid;
                for (int r = 0; r <= cfg.rounds; r++) {
                    double n = 0;
                    for (std::size_t w = 0; w < tab.num_words(); w++) {
                        for (std::size_t k = 0; k < ps.size(); k++) {
                            if (exp.detectors[k].round == r) alive[w] &= ~tab.bits[k][w];
                        }
                        n += std::popcount(alive[w]);
                    }
                    retention[r] = n / (double)tab.shots;
                }
            }
        }
        bool monotone = true;
        for (int r = 0; r <= cfg.rounds; r++) {
            rounds[r]["retention"] = retention[r];
            if (r > 0 && retention[r] > retention[r - 1] + 1e-12) monotone = false;
        }
        if (!monotone) {
            throw SimulationError("retention increased between rounds");
        }
        json s;
        s["state"] = label.str();
        s["basis"] = basis;
        s["ambiguous"] = ambiguous;
        s["exact"] = exact;
        s["rounds"] = rounds;
        for (int k = 0; k < 3; k++) {
            if (ideal[k] == 0) {
                s["fits"][names[k]] = nullptr;
                continue;
            }
            s["fits"][names[k]] = {{"raw", decay_fits(raw[k], exact)}, {"detected", decay_fits(det[k], exact)}};
        }
        states.push_back(s);
        for (int r = 0; r <= cfg.rounds; r++) {
            const json &row = rounds[r];
            std::vector<std::string> cells = {label.str(), std::to_string(r)};
            for (int k = 0; k < 3; k++) {
                cells.push_back(num(row[names[k]]["raw"]["value"].get<double>()));
                cells.push_back(num(row[names[k]]["detected"]["value"].get<double>()));
            }
            cells.push_back(num(kept_fraction[r]));
            cells.push_back(num(retention[r]));
            out.csv.rows.push_back(cells);
        }
    }
    out.json["states"] = states;
    return out;
}

RunOutput run_pauli_gates(const Config &cfg) {
    RunOutput out;
    out.csv.header = {"state", "gate", "static_ideal", "static_detected", "dynamical_ideal", "dynamical_detected"};
    int gate_round = cfg.get_int("gate_round", 2);
    std::istringstream in(cfg.get_string("gates", "I_S X_S Y_S Z_S I_D X_D Y_D Z_D"));
    std::vector<GateSpec> gates;
    for (std::string g; in >> g;) {
        GateSpec spec = GateSpec::parse(g, gate_round);
        if (spec.kind != GateSpec::Kind::StaticPauli && spec.kind != GateSpec::Kind::DynamicPauli) {
            throw ConfigError("pauli-gates takes only Pauli gates, got " + g);
        }
        gates.push_back(spec);
    }
    json results = json::array();
    double worst = 1;
    auto ls = labels(cfg);
    for (std::size_t i = 0; i < ls.size(); i++) {
        for (std::size_t g = 0; g < gates.size(); g++) {
            ExperimentSpec spec;
            spec.state = ls[i];
            spec.rounds = cfg.rounds;
            spec.gates = {gates[g]};
            spec.basis_s = ls[i].s.basis;
            spec.basis_d = ls[i].d.basis;
            spec.lowering = cfg.lowering;
            Measured m = measure(cfg, spec, sub_seed(cfg.seed, i, g), cfg.noise);
            bool on_s = gates[g].kind == GateSpec::Kind::StaticPauli;
            int is = ls[i].s.sign * (on_s ? pauli_flip(gates[g].pauli, ls[i].s.basis) : 1);
            int id = ls[i].d.sign * (!on_s ? pauli_flip(gates[g].pauli, ls[i].d.basis) : 1);
            const Tally &t = m.tally;
            double fs = (1 + is * t.mean_kept(0)) / 2, fd = (1 + id * t.mean_kept(1)) / 2;
            worst = std::min({worst, fs, fd});
            json r;
            r["state"] = ls[i].str();
            r["gate"] = gates[g].str();
            r["static"] = {{"ideal", is}, {"raw", t.mean_raw(0)}, {"detected", t.mean_kept(0)}};
            r["dynamical"] = {{"ideal", id}, {"raw", t.mean_raw(1)}, {"detected", t.mean_kept(1)}};
            r["success_detected"] = {{"static", fs}, {"dynamical", fd}};
            r["retention"] = t.retention();
            results.push_back(r);
            out.csv.rows.push_back({ls[i].str(), gates[g].str(), std::to_string(is), num(t.mean_kept(0)),
                                    std::to_string(id), num(t.mean_kept(1))});
        }
    }
    out.json["gates"] = results;
    out.json["worst_success_detected"] = worst;
    return out;
}

RunOutput run_rotation_sweep(const Config &cfg) {
    std::string axis = cfg.get_string("axis", "rz");
    if (axis != "rz" && axis != "rx") {
        throw ConfigError("key 'axis' must be rz or rx");
    }
    Config c = cfg;
    if (!cfg.has("states") && axis == "rx") {
        c.states = {"0,0"};
    }
    // The sweep contains rotations, so auto means the vector backend.
    if (c.backend == Backend::Auto) {
        c.backend = Backend::Vector;
    }
    int gate_round = cfg.get_int("gate_round", axis == "rz" ? 2 : 3);
    int rounds = cfg.has("rounds") ? cfg.rounds : gate_round;
    int n = cfg.get_int("angles", 13);
    if (n < 3) {
        throw ConfigError("key 'angles' must be at least 3");
    }
    RunOutput out;
    out.csv.header = {"state", "angle", "basis", "ideal", "raw", "detected"};
    json states = json::array();
    auto ls = labels(c);
    const std::string letters = "XYZ";
    for (std::size_t i = 0; i < ls.size(); i++) {
        Eigen::Vector3d bloch0 = Eigen::Vector3d::Zero();
        bloch0(letters.find(ls[i].d.basis)) = ls[i].d.sign;
        std::vector<double> angles;
        std::vector<double> ys_raw[3], ys_det[3];
        double max_dev = 0;
        json points = json::array();
        for (int k = 0; k < n; k++) {
            double a = 2 * std::numbers::pi * k / (n - 1);
            angles.push_back(a);
            GateSpec g;
            g.kind = axis == "rz" ? GateSpec::Kind::DynamicRz : GateSpec::Kind::DynamicRx;
            g.angle = a;
            g.after_round = gate_round;
            Eigen::Vector3d b = bloch0;
            if (axis == "rz") {
                b = Eigen::Vector3d(bloch0(0) * std::cos(a) - bloch0(1) * std::sin(a),
                                    bloch0(0) * std::sin(a) + bloch0(1) * std::cos(a), bloch0(2));
            } else {
                b = Eigen::Vector3d(bloch0(0), bloch0(1) * std::cos(a) - bloch0(2) * std::sin(a),
                                    bloch0(1) * std::sin(a) + bloch0(2) * std::cos(a));
            }
            json p;
            p["angle"] = a;
            for (int q = 0; q < 3; q++) {
                ExperimentSpec spec;
                spec.state = ls[i];
                spec.rounds = rounds;
                spec.gates = {g};
                spec.basis_s = ls[i].s.basis;
                spec.basis_d = letters[q];
                spec.lowering = c.lowering;
                Measured m = measure(c, spec, sub_seed(c.seed, i, k, q), c.noise);
                double vr = m.tally.mean_raw(1), vd = m.tally.mean_kept(1);
                ys_raw[q].push_back(vr);
                ys_det[q].push_back(vd);
                max_dev = std::max(max_dev, std::abs((c.post == Post::Raw ? vr : vd) - b(q)));
                p[std::string(1, letters[q])] = {{"ideal", b(q)}, {"raw", vr}, {"detected", vd}};
                out.csv.rows.push_back({ls[i].str(), num(a), std::string(1, letters[q]), num(b(q)), num(vr), num(vd)});
            }
            points.push_back(p);
        }
        json s;
        s["state"] = ls[i].str();
        s["axis"] = axis;
        s["gate_round"] = gate_round;
        s["readout_round"] = rounds;
        s["points"] = points;
        for (int q = 0; q < 3; q++) {
            std::string key(1, letters[q]);
            s["fits"][key] = {{"raw", fit_json(fit_trig(angles, ys_raw[q]))},
                              {"detected", fit_json(fit_trig(angles, ys_det[q]))}};
        }
        s["max_ideal_deviation"] = max_dev;
        states.push_back(s);
    }
    out.json["states"] = states;
    return out;
}

namespace {

json bell_like(const Config &cfg, const StateLabel &label, int gate_round, uint64_t seed, tomo::DensityMatrix *rho_out) {
    ExperimentSpec spec;
    spec.state = label;
    spec.rounds = cfg.rounds;
    spec.gates = {GateSpec::parse("CNOT", gate_round)};
    spec.lowering = cfg.lowering;
    Tomography t = tomography(cfg, spec, seed, cfg.noise);
    Eigen::Vector4cd target = cnot_matrix() * product_state(label);
    auto rho_raw = reconstruct(t.raw), rho_det = reconstruct(t.kept);
    *rho_out = cfg.post == Post::Raw ? rho_raw : rho_det;
    json s;
    s["state"] = label.str();
    s["fidelity_raw"] = tomo::state_fidelity(rho_raw, target);
    s["fidelity_detected"] = tomo::state_fidelity(rho_det, target);
    s["retention"] = t.retention;
    s["exact"] = t.exact;
    s["rho"] = matrix_json(*rho_out);
    return s;
}

}  // namespace

RunOutput run_cnot_bell(const Config &cfg) {
    int gate_round = cfg.get_int("gate_round", 2);
    RunOutput out;
    out.csv.header = {"state", "fidelity_raw", "fidelity_detected", "retention"};
    json states = json::array();
    double mean_raw = 0, mean_det = 0;
    auto ls = labels(cfg);
    for (std::size_t i = 0; i < ls.size(); i++) {
        tomo::DensityMatrix rho;
        json s = bell_like(cfg, ls[i], gate_round, sub_seed(cfg.seed, i), &rho);
        mean_raw += s["fidelity_raw"].get<double>() / ls.size();
        mean_det += s["fidelity_detected"].get<double>() / ls.size();
        out.csv.rows.push_back({ls[i].str(), num(s["fidelity_raw"].get<double>()),
                                num(s["fidelity_detected"].get<double>()), num(s["retention"].get<double>())});
        states.push_back(s);
    }
    out.json["states"] = states;
    out.json["mean_fidelity_raw"] = mean_raw;
    out.json["mean_fidelity_detected"] = mean_det;
    return out;
}

RunOutput run_lqpt_cnot(const Config &cfg) {
    int gate_round = cfg.get_int("gate_round", 2);
    bool cptp = cfg.get_bool("cptp", false);
    auto singles = eigenstates(cfg);
    std::vector<tomo::PauliVector> inputs, outputs;
    RunOutput out;
    out.csv.header = {"input", "input_fidelity", "output_fidelity", "retention"};
    json pairs = json::array();
    std::size_t idx = 0;
    for (const auto &a : singles) {
        for (const auto &b : singles) {
            StateLabel label{a, b};
            ExperimentSpec spec;
            spec.state = label;
            spec.rounds = cfg.rounds;
            spec.lowering = cfg.lowering;
            // Input states are characterized by the same readout without the gate.
            Tomography tin = tomography(cfg, spec, sub_seed(cfg.seed, idx, 0), cfg.noise);
            spec.gates = {GateSpec::parse("CNOT", gate_round)};
            Tomography tout = tomography(cfg, spec, sub_seed(cfg.seed, idx, 1), cfg.noise);
            auto rin = reconstruct(tin.counts(cfg.post)), rout = reconstruct(tout.counts(cfg.post));
            inputs.push_back(tomo::pauli_vector(rin));
            outputs.push_back(tomo::pauli_vector(rout));
            double fin = tomo::state_fidelity(rin, product_state(label));
            double fout = tomo::state_fidelity(rout, cnot_matrix() * product_state(label));
            pairs.push_back({{"input", label.str()},
                             {"input_fidelity", fin},
                             {"output_fidelity", fout},
                             {"retention", tout.retention}});
            out.csv.rows.push_back({label.str(), num(fin), num(fout), num(tout.retention)});
            idx++;
        }
    }
    tomo::TransferMatrix r = tomo::lqpt(inputs, outputs, cptp);
    tomo::TransferMatrix ideal = tomo::unitary_transfer_matrix(cnot_matrix());
    auto f = tomo::process_and_gate_fidelity(r, ideal);
    json rows = json::array();
    for (int i = 0; i < 16; i++) {
        json row = json::array();
        for (int j = 0; j < 16; j++) row.push_back(r(i, j));
        rows.push_back(row);
    }
    out.json["inputs"] = pairs;
    out.json["transfer_matrix"] = rows;
    out.json["cptp_projected"] = cptp;
    out.json["process_fidelity"] = f.process;
    out.json["gate_fidelity"] = f.gate;
    return out;
}

}  // namespace floq::harness::detail
