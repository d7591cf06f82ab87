#include "gdlr/solver.hpp"

#include "gdlr/theorems.hpp"
#include "gdlr/validate.hpp"

#include <algorithm>
#include <atomic>
#include <thread>

namespace gdlr {

const char* to_string(SolveStatus s) {
    switch (s) {
    case SolveStatus::Solved:
        return "solved";
    case SolveStatus::Exhausted:
        return "exhausted";
    case SolveStatus::NoSolution:
        return "no-solution";
    case SolveStatus::Unsolvable:
        return "unsolvable";
    }
    return "?";
}

CandidateSpace::CandidateSpace(const GameDescription& desc, const CostFunction& cost)
    : desc_(desc), dom_(repair_domains(desc)) {
    auto priced = [&](ChangeTuple t) { return std::pair<ChangeTuple, int>{t, cost(desc, t)}; };
    for (const auto& rule : desc.changeable()) {
        Slot s{rule.id, desc.section_of(rule.id), &rule, {}, {}, {}};
        std::vector<Term> heads;
        switch (s.section) {
        case Section::Legal:
            heads = dom_.legal_heads;
            break;
        case Section::Next:
            heads = dom_.next_heads;
            break;
        case Section::Empty:
        case Section::Other:
            std::merge(dom_.legal_heads.begin(), dom_.legal_heads.end(), dom_.next_heads.begin(),
                       dom_.next_heads.end(), std::back_inserter(heads));
            break;
        }
        if (rule.head) {
            s.heads.push_back(priced(ChangeTuple::change(rule.id, std::nullopt)));
        }
        for (const auto& h : heads) {
            if (!rule.head || !(*rule.head == h)) {
                s.heads.push_back(priced(ChangeTuple::change(rule.id, h)));
            }
        }
        std::vector<Literal> body = rule.body;
        std::sort(body.begin(), body.end());
        for (const auto& l : body) {
            s.removes.push_back(priced(ChangeTuple::remove(rule.id, l)));
        }
        std::vector<Literal> lits;
        std::merge(dom_.action_lits.begin(), dom_.action_lits.end(), dom_.fluent_lits.begin(), dom_.fluent_lits.end(),
                   std::back_inserter(lits));
        for (const auto& l : lits) {
            if (!rule.body_contains(l)) {
                s.adds.push_back(priced(ChangeTuple::add(rule.id, l)));
            }
        }
        slots_.push_back(std::move(s));
    }
    clean_suffix_.assign(slots_.size() + 1, 1);
    for (std::size_t k = slots_.size(); k-- > 0;) {
        clean_suffix_[k] = clean_suffix_[k + 1] && !redundant_body(slots_[k].rule->body);
    }
    tuples_from_.assign(slots_.size() + 1, 0);
    for (std::size_t k = slots_.size(); k-- > 0;) {
        const Slot& s = slots_[k];
        tuples_from_[k] = tuples_from_[k + 1] || !s.heads.empty() || !s.removes.empty() || !s.adds.empty();
    }
}

std::vector<ChangeTuple> CandidateSpace::tuples() const {
    std::vector<ChangeTuple> out;
    for (const auto& s : slots_) {
        for (const auto* group : {&s.heads, &s.removes, &s.adds}) {
            for (const auto& [t, c] : *group) {
                out.push_back(t);
            }
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

int CandidateSpace::cost_ceiling() const {
    int sum = 0;
    for (const auto& s : slots_) {
        int head = 0;
        for (const auto& [t, c] : s.heads) {
            head = std::max(head, c);
        }
        sum += head;
        for (const auto* group : {&s.removes, &s.adds}) {
            for (const auto& [t, c] : *group) {
                sum += c;
            }
        }
    }
    return sum;
}

bool CandidateSpace::for_each_at_cost(int C, const std::function<bool(const Repair&)>& visit) const {
    bool truncated = false;
    std::vector<ChangeTuple> chosen;
    // Tuples are pushed in canonical order, so `chosen` is always sorted.
    auto emit = [&]() { return visit(Repair(chosen)); };

    std::function<bool(std::size_t, int)> rule_step;

    auto body_step = [&](const Slot& s, bool next_type, std::size_t k_slot, int remaining) -> bool {
        // candidate body tuples for this slot in canonical order
        std::vector<const std::pair<ChangeTuple, int>*> items;
        for (const auto& p : s.removes) {
            items.push_back(&p);
        }
        for (const auto& p : s.adds) {
            if (next_type || !dom_.is_action_lit(p.first.literal)) {
                items.push_back(&p);
            }
        }
        std::vector<char> taken(items.size(), 0);
        std::function<bool(std::size_t, int)> rec = [&](std::size_t k, int rem) -> bool {
            if (k == items.size()) {
                std::vector<Literal> body;
                for (const auto& l : s.rule->body) {
                    bool removed = false;
                    for (std::size_t i = 0; i < items.size(); ++i) {
                        if (taken[i] && items[i]->first.kind == ChangeKind::Remove && items[i]->first.literal == l) {
                            removed = true;
                        }
                    }
                    if (!removed) {
                        body.push_back(l);
                    }
                }
                for (std::size_t i = 0; i < items.size(); ++i) {
                    if (taken[i] && items[i]->first.kind == ChangeKind::Add) {
                        body.push_back(items[i]->first.literal);
                    }
                }
                if (redundant_body(body)) {
                    return true;
                }
                return rule_step(k_slot + 1, rem);
            }
            if (rem == 0) {
                // nothing more fits; skip straight to the end of this body
                truncated = true;
                std::fill(taken.begin() + static_cast<std::ptrdiff_t>(k), taken.end(), 0);
                return rec(items.size(), rem);
            }
            const auto& [t, c] = *items[k];
            if (c <= rem) {
                chosen.push_back(t);
                taken[k] = 1;
                bool go_on = rec(k + 1, rem - c);
                taken[k] = 0;
                chosen.pop_back();
                if (!go_on) {
                    return false;
                }
            } else {
                truncated = true;
            }
            return rec(k + 1, rem);
        };
        return rec(0, remaining);
    };

    rule_step = [&](std::size_t k, int remaining) -> bool {
        if (k == slots_.size()) {
            return remaining == 0 ? emit() : true;
        }
        if (remaining == 0) {
            truncated = truncated || tuples_from_[k];
            return clean_suffix_[k] ? emit() : true;
        }
        const Slot& s = slots_[k];
        // head alternatives: each c tuple, then keeping the head
        for (std::size_t h = 0; h <= s.heads.size(); ++h) {
            std::optional<Term> head = s.rule->head;
            int rem = remaining;
            if (h < s.heads.size()) {
                const auto& [t, c] = s.heads[h];
                if (c > remaining) {
                    truncated = true;
                    continue;
                }
                chosen.push_back(t);
                head = t.head;
                rem -= c;
            }
            bool go_on;
            if (!head) {
                go_on = rule_step(k + 1, rem);
            } else {
                go_on = body_step(s, dom_.is_next_head(*head), k, rem);
            }
            if (h < s.heads.size()) {
                chosen.pop_back();
            }
            if (!go_on) {
                return false;
            }
        }
        return true;
    };

    rule_step(0, C);
    return truncated;
}

namespace {

bool invariant_atom(const GameDescription& desc, const Term& atom) {
    if (atom.name() == "true") {
        return true;
    }
    if (atom.name() == "legal" || atom.name() == "next" || atom.name() == "does") {
        return false;
    }
    auto deps = dependencies(desc.all_rules(), atom.name());
    return !deps.count("legal") && !deps.count("next") && !deps.count("does");
}

bool invariant_formula(const GameDescription& desc, const Formula& f) {
    if (f.degree() != 0) {
        return false;
    }
    for (const auto& a : f.atoms()) {
        if (!invariant_atom(desc, a)) {
            return false;
        }
    }
    return true;
}

std::optional<RepairSolution> check_candidate(const RepairTask& task, const Repair& r) {
    GameDescription repaired = task.desc.with_changeable(repaired_rules(task.desc, r));
    std::optional<Game> game;
    try {
        game.emplace(repaired);
    } catch (const NotStratified&) {
        return std::nullopt;
    }
    ModelChecker mc(*game);
    RepairSolution sol;
    for (const auto& phi : task.negative) {
        auto res = mc.models(phi);
        if (res.holds) {
            return std::nullopt;
        }
        sol.negative_evidence.push_back(std::move(*res.counterexample));
    }
    for (const auto& phi : task.positive) {
        if (!mc.models(phi).holds) {
            return std::nullopt;
        }
    }
    sol.repair = r;
    sol.cost = task.cost.total(task.desc, r);
    sol.repaired = std::move(repaired);
    return sol;
}

std::optional<int> end_horizon(const std::vector<Formula>& positive) {
    for (const auto& f : positive) {
        if (f == macro_end(f.degree())) {
            return f.degree();
        }
    }
    return std::nullopt;
}

} // namespace

std::optional<std::string> invariant_conflict(const RepairTask& task) {
    std::optional<Game> game;
    try {
        game.emplace(task.desc);
    } catch (const NotStratified&) {
        return std::nullopt;
    }
    ModelChecker mc(*game);
    for (const auto& f : task.positive) {
        if (invariant_formula(task.desc, f) && !mc.models(f).holds) {
            return "positive formula " + f.to_string() + " fails and no repair can change its value";
        }
    }
    for (const auto& f : task.negative) {
        if (invariant_formula(task.desc, f) && mc.models(f).holds) {
            return "negative formula " + f.to_string() + " holds and no repair can change its value";
        }
    }
    return std::nullopt;
}

SolveResult solve_mrp(const RepairTask& task) {
    SolveResult result;
    result.bound = task.max_cost;
    if (auto why = invariant_conflict(task)) {
        result.status = SolveStatus::Unsolvable;
        result.reason = *why;
        return result;
    }
    const unsigned jobs = task.jobs ? task.jobs : std::max(1u, std::thread::hardware_concurrency());
    const std::size_t batch_size = std::max<std::size_t>(16, 8 * jobs);
    const std::size_t wanted = task.max_solutions;
    CandidateSpace space(task.desc, task.cost);

    std::vector<Repair> batch;
    auto run_batch = [&]() {
        std::vector<std::optional<RepairSolution>> out(batch.size());
        std::atomic<std::size_t> next{0};
        auto worker = [&]() {
            for (std::size_t i = next++; i < batch.size(); i = next++) {
                out[i] = check_candidate(task, batch[i]);
            }
        };
        if (jobs <= 1 || batch.size() <= 1) {
            worker();
        } else {
            std::vector<std::thread> pool;
            for (unsigned t = 0; t < std::min<std::size_t>(jobs, batch.size()); ++t) {
                pool.emplace_back(worker);
            }
            for (auto& th : pool) {
                th.join();
            }
        }
        result.candidates += batch.size();
        for (auto& s : out) {
            if (s && (wanted == 0 || result.solutions.size() < wanted)) {
                result.solutions.push_back(std::move(*s));
            }
        }
        batch.clear();
    };
    auto full = [&]() { return wanted != 0 && result.solutions.size() >= wanted; };

    for (int C = 0; C <= task.max_cost; ++C) {
        bool truncated = space.for_each_at_cost(C, [&](const Repair& r) {
            batch.push_back(r);
            if (batch.size() >= batch_size) {
                run_batch();
            }
            return !full();
        });
        if (!batch.empty()) {
            run_batch();
        }
        if (!result.solutions.empty()) {
            result.status = SolveStatus::Solved;
            return result;
        }
        if (!truncated) {
            result.status = SolveStatus::NoSolution;
            result.reason = "every valid repair was checked (largest cost " + std::to_string(C) + ")";
            auto n = end_horizon(task.positive);
            if (n) {
                const int K = std::max<int>(1, static_cast<int>(task.negative.size()));
                const long long bound = theorem3_bound(task.desc, *n, K);
                if (static_cast<long long>(task.desc.size_empty()) >= bound) {
                    result.status = SolveStatus::Unsolvable;
                    result.reason += "; with " + std::to_string(task.desc.size_empty()) +
                                     " empty rules >= " + std::to_string(bound) + ", more empty rules cannot help";
                }
            }
            return result;
        }
    }
    result.status = SolveStatus::Exhausted;
    result.reason = "no solution of cost <= " + std::to_string(task.max_cost);
    return result;
}

bool decide_mrp_b(const RepairTask& task, int C) {
    if (C < 0) {
        return false;
    }
    RepairTask t = task;
    t.max_cost = C;
    t.max_solutions = 1;
    return solve_mrp(t).status == SolveStatus::Solved;
}

bool decide_mrp_t(const RepairTask& task, const ChangeTuple& t) {
    CandidateSpace space(task.desc, task.cost);
    int hi = space.cost_ceiling();
    if (!decide_mrp_b(task, hi)) {
        return false;
    }
    int lo = 0;
    while (lo < hi) {
        int mid = lo + (hi - lo) / 2;
        if (decide_mrp_b(task, mid)) {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    const int C = lo;
    if (C == 0) {
        return false;
    }
    RepairTask doubled = task;
    doubled.cost = task.cost.doubled_except(t);
    return decide_mrp_b(doubled, 2 * C - 1);
}

} // namespace gdlr
