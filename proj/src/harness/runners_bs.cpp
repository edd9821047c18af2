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


#include <algorithm>
#include <bit>
#include <map>
#include <sstream>

#include "common.hpp"
#include "floq/fbs/bs.hpp"
#include "floq/vector/state_vector.hpp"

namespace floq::harness::detail {

namespace {

// Logical statistics of one BS experiment under the three post-processing modes.
struct BsStats {
    double total = 0, kept = 0;
    double raw = 0, detected = 0, corrected = 0;  // sums of logical values
    std::vector<double> fired;                    // per detector
    bool exact = false;

    double mean(Post p) const {
        if (p == Post::Detect) return kept > 0 ? detected / kept : 0;
        return total > 0 ? (p == Post::Raw ? raw : corrected) / total : 0;
    }
    double error(Post p) const {
        if (exact) return 0;
        double m = mean(p), n = p == Post::Detect ? kept : total;
        return n > 0 ? std::sqrt(std::max(0.0, 1 - m * m) / n) : 0;
    }
};

BsStats bs_stats(const Config &cfg, const BsExperiment &exp, uint64_t seed) {
    std::vector<Parity> ps;
    for (const auto &d : exp.detectors) ps.push_back(d.parity);
    std::size_t nd = ps.size();
    ps.push_back(exp.logical);
    BsStats s;
    s.fired.assign(nd, 0);
    Backend b = resolve_backend(exp.circuit, cfg.backend);
    std::vector<int> values(nd);
    auto account = [&](double w, int logical) {
        bool quiet = true;
        for (std::size_t k = 0; k < nd; k++) {
            if (values[k] < 0) {
                s.fired[k] += w;
                quiet = false;
            }
        }
        s.total += w;
        s.raw += w * logical;
        if (quiet) {
            s.kept += w;
            s.detected += w * logical;
            s.corrected += w * logical;
        } else {
            s.corrected += w * logical * bs_correction(exp, values);
        }
    };
    if (b == Backend::Vector && cfg.noise.is_noiseless()) {
        s.exact = true;
        for (const auto &br : enumerate_branches(exp.circuit, ps, {1u << 12, 1e-14})) {
            for (std::size_t k = 0; k < nd; k++) values[k] = br.tracked[k];
            account(br.prob, br.tracked[nd]);
        }
        return s;
    }
    SampleOptions so;
    so.backend = b;
    so.seed = seed;
    ShotTable t = sample_parities(exp.circuit, cfg.noise, ps, cfg.shots, so);
    for (uint64_t shot = 0; shot < t.shots; shot++) {
        for (std::size_t k = 0; k < nd; k++) values[k] = t.bit(k, shot) ? -1 : 1;
        account(1, t.bit(nd, shot) ? -1 : 1);
    }
    return s;
}

struct Bloch {
    int v[3] = {0, 0, 0};  // x, y, z
    void apply(BsGate g) {
        switch (g) {
            case BsGate::X: v[1] = -v[1], v[2] = -v[2]; break;
            case BsGate::Y: v[0] = -v[0], v[2] = -v[2]; break;
            case BsGate::Z: v[0] = -v[0], v[1] = -v[1]; break;
            case BsGate::Y90: {
                int nx = v[2], nz = -v[0];
                v[0] = nx, v[2] = nz;
                break;
            }
        }
    }
};

std::vector<std::pair<int, BsGate>> parse_sequence(const std::string &text, int rounds) {
    std::vector<std::pair<int, BsGate>> out;
    std::istringstream in(text);
    for (std::string w; in >> w;) {
        auto at = w.find('@');
        if (at == std::string::npos) {
            throw ConfigError("bs gate '" + w + "' needs the form NAME@ROUND");
        }
        int r = 0;
        try {
            r = std::stoi(w.substr(at + 1));
        } catch (const std::exception &) {
            throw ConfigError("bad round in bs gate '" + w + "'");
        }
        if (r < 0 || r > rounds) {
            throw ConfigError("bs gate '" + w + "' lies outside rounds 0.." + std::to_string(rounds));
        }
        try {
            out.push_back({r, parse_bs_gate(w.substr(0, at))});
        } catch (const std::invalid_argument &e) {
            throw ConfigError(e.what());
        }
    }
    std::stable_sort(out.begin(), out.end(), [](const auto &a, const auto &b) { return a.first < b.first; });
    return out;
}

json modes_json(const BsStats &s, int ideal) {
    json j;
    for (Post p : {Post::Raw, Post::Detect, Post::Correct}) {
        j[post_name(p)] = estimate(ideal * s.mean(p), s.error(p));
    }
    return j;
}

}  // namespace

RunOutput run_bs_memory(const Config &cfg) {
    RunOutput out;
    out.csv.header = {"state", "round", "raw", "detected", "corrected", "retention"};
    json states = json::array();
    auto es = eigenstates(cfg);
    for (std::size_t i = 0; i < es.size(); i++) {
        std::vector<double> rs, y[3], e[3];
        json rounds = json::array();
        BsStats last;
        BsExperiment last_exp;
        for (int r = 0; r <= cfg.rounds; r++) {
            BsSpec spec;
            spec.state = es[i];
            spec.rounds = r;
            spec.basis = es[i].basis;
            spec.lowering = cfg.lowering;
            BsExperiment exp = compile_bs(code(), spec);
            BsStats s = bs_stats(cfg, exp, sub_seed(cfg.seed, i, r));
            int ideal = es[i].sign;
            json row = modes_json(s, ideal);
            row["round"] = r;
            row["retention"] = s.total > 0 ? s.kept / s.total : 0;
            rounds.push_back(row);
            rs.push_back(r);
            int k = 0;
            for (Post p : {Post::Raw, Post::Detect, Post::Correct}) {
                y[k].push_back(ideal * s.mean(p));
                e[k].push_back(s.error(p));
                k++;
            }
            out.csv.rows.push_back({es[i].str(), std::to_string(r), num(ideal * s.mean(Post::Raw)),
                                    num(ideal * s.mean(Post::Detect)), num(ideal * s.mean(Post::Correct)),
                                    num(s.total > 0 ? s.kept / s.total : 0)});
            if (r == cfg.rounds) {
                last = s;
                last_exp = exp;
            }
        }
        // Detection probability per time slice of the longest run.
        std::map<int, std::pair<double, int>> slices;
        for (std::size_t k = 0; k < last_exp.detectors.size(); k++) {
            const auto &d = last_exp.detectors[k];
            if (d.line < 0) continue;
            slices[d.slice].first += last.total > 0 ? last.fired[k] / last.total : 0;
            slices[d.slice].second++;
        }
        json detection = json::array();
        for (const auto &[slice, acc] : slices) {
            detection.push_back({{"slice", slice}, {"probability", acc.first / acc.second}});
        }
        json s;
        s["state"] = es[i].str();
        s["exact"] = last.exact;
        s["decoded"] = last_exp.decode_line >= 0;
        s["rounds"] = rounds;
        s["detection_probability"] = detection;
        int k = 0;
        for (Post p : {Post::Raw, Post::Detect, Post::Correct}) {
            s["fits"][post_name(p)] =
                rs.size() >= 3 ? fit_json(fit_exp_decay(rs, y[k], last.exact ? std::vector<double>{} : e[k])) : json();
            k++;
        }
        states.push_back(s);
    }
    out.json["states"] = states;
    return out;
}

RunOutput run_bs_gates(const Config &cfg) {
    auto gates = parse_sequence(cfg.get_string("bs_gates", "X@1 Y90@2 Z@3"), cfg.rounds);
    RunOutput out;
    out.csv.header = {"state", "basis", "ideal", "raw", "detected", "corrected"};
    json states = json::array();
    auto es = eigenstates(cfg);
    for (std::size_t i = 0; i < es.size(); i++) {
        Bloch b;
        b.v[std::string("XYZ").find(es[i].basis)] = es[i].sign;
        std::string seq;
        for (const auto &[r, g] : gates) {
            b.apply(g);
            seq += (seq.empty() ? "" : " ") + bs_gate_name(g) + "@" + std::to_string(r);
        }
        int axis = b.v[0] ? 0 : b.v[1] ? 1 : 2;
        BsSpec spec;
        spec.state = es[i];
        spec.rounds = cfg.rounds;
        spec.gates = gates;
        spec.basis = "XYZ"[axis];
        spec.lowering = cfg.lowering;
        BsExperiment exp = compile_bs(code(), spec);
        BsStats s = bs_stats(cfg, exp, sub_seed(cfg.seed, i));
        int ideal = b.v[axis];
        json j;
        j["state"] = es[i].str();
        j["gates"] = seq;
        j["basis"] = std::string(1, spec.basis);
        j["ideal"] = ideal;
        j["values"] = modes_json(s, ideal);
        j["retention"] = s.total > 0 ? s.kept / s.total : 0;
        states.push_back(j);
        out.csv.rows.push_back({es[i].str(), std::string(1, spec.basis), std::to_string(ideal),
                                num(ideal * s.mean(Post::Raw)), num(ideal * s.mean(Post::Detect)),
                                num(ideal * s.mean(Post::Correct))});
    }
    out.json["states"] = states;
    return out;
}

}  // namespace floq::harness::detail
