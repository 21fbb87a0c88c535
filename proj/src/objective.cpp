#include "kint/objective.hpp"

#include <algorithm>
#include <deque>
#include <fstream>
#include <limits>
#include <set>

#include "kint/error.hpp"
#include "kint/json_util.hpp"
#include "kint/moves.hpp"

namespace kint {

const char* to_string(ObjectiveKind kind) {
    switch (kind) {
    case ObjectiveKind::table: return "table";
    case ObjectiveKind::inversion: return "inversion";
    case ObjectiveKind::search_distance: return "search_distance";
    case ObjectiveKind::weighted_completion: return "weighted_completion";
    case ObjectiveKind::flowshop2: return "flowshop2";
    }
    return "objective";
}

namespace {

void validate_known_optima(const Objective& f,
                           const std::optional<std::vector<Permutation>>& optima) {
    if (!optima) return;
    if (optima->empty()) fail(ErrorCode::invalid_params, "known_optima must not be empty");
    std::optional<Value> v;
    for (const auto& p : *optima) {
        if (p.n() != f.n()) fail(ErrorCode::arity_mismatch, "known optimum has wrong order");
        Value pv = f.evaluate(p);
        if (v && pv != *v)
            fail(ErrorCode::invalid_params, "known_optima values disagree: " + v->to_string() +
                                                " vs " + pv.to_string());
        v = pv;
    }
}

template <typename Fn>
void for_each_permutation(int n, Fn&& fn) {
    std::vector<int> seq(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) seq[static_cast<std::size_t>(i)] = i + 1;
    do {
        fn(make_permutation(seq));
    } while (std::next_permutation(seq.begin(), seq.end()));
}

} // namespace

Objective Objective::table(int n, const std::vector<std::pair<std::string, Value>>& entries,
                           std::optional<std::vector<Permutation>> known_optima) {
    require_within_cap(n, kDefaultEnumerationCap);
    Objective f;
    f.kind_ = ObjectiveKind::table;
    f.n_ = n;
    f.domain_ = ValueDomain::integer;
    f.table_.assign(factorial(n), std::nullopt);
    for (const auto& [key, value] : entries) {
        Permutation p = parse_permutation(key);
        if (p.n() != n) fail(ErrorCode::arity_mismatch, "table key '" + key + "' has wrong order");
        if (!value.is_integer()) f.domain_ = ValueDomain::rational;
        f.table_[lex_rank(p)] = value;
    }
    f.known_optima_ = std::move(known_optima);
    validate_known_optima(f, f.known_optima_);
    return f;
}

Objective Objective::inversion(int n) {
    if (n < kMinOrder || n > kMaxOrder) fail(ErrorCode::invalid_params, "order out of range");
    Objective f;
    f.kind_ = ObjectiveKind::inversion;
    f.n_ = n;
    f.domain_ = ValueDomain::integer;
    f.known_optima_ = std::vector<Permutation>{Permutation::identity(n)};
    return f;
}

Objective Objective::weighted_completion(std::vector<WctJob> jobs,
                                         std::optional<std::vector<Permutation>> known_optima) {
    if (jobs.empty()) fail(ErrorCode::invalid_params, "no jobs");
    if (static_cast<int>(jobs.size()) > kMaxOrder) fail(ErrorCode::invalid_params, "too many jobs");
    for (const auto& j : jobs)
        if (j.p <= Value(0) || j.w <= Value(0))
            fail(ErrorCode::invalid_params, "job parameters must be positive");
    Objective f;
    f.kind_ = ObjectiveKind::weighted_completion;
    f.n_ = static_cast<int>(jobs.size());
    f.domain_ = ValueDomain::rational;
    f.wct_ = std::move(jobs);
    f.known_optima_ = std::move(known_optima);
    validate_known_optima(f, f.known_optima_);
    return f;
}

Objective Objective::flowshop2(std::vector<Flowshop2Job> jobs,
                               std::optional<std::vector<Permutation>> known_optima) {
    if (jobs.empty()) fail(ErrorCode::invalid_params, "no jobs");
    if (static_cast<int>(jobs.size()) > kMaxOrder) fail(ErrorCode::invalid_params, "too many jobs");
    for (const auto& j : jobs)
        if (j.a <= Value(0) || j.b <= Value(0))
            fail(ErrorCode::invalid_params, "job parameters must be positive");
    Objective f;
    f.kind_ = ObjectiveKind::flowshop2;
    f.n_ = static_cast<int>(jobs.size());
    f.domain_ = ValueDomain::rational;
    f.f2_ = std::move(jobs);
    f.known_optima_ = std::move(known_optima);
    validate_known_optima(f, f.known_optima_);
    return f;
}

Value Objective::evaluate(const Permutation& s) const {
    if (s.n() != n_)
        fail(ErrorCode::arity_mismatch, "permutation order " + std::to_string(s.n()) +
                                            ", objective expects " + std::to_string(n_));
    switch (kind_) {
    case ObjectiveKind::table:
    case ObjectiveKind::search_distance: {
        const auto& slot = table_[lex_rank(s)];
        if (!slot) fail(ErrorCode::missing_table_entry, "no value for " + s.to_string());
        return *slot;
    }
    case ObjectiveKind::inversion: return Value(inversion_count(s));
    case ObjectiveKind::weighted_completion: return weighted_completion_value(wct_, s);
    case ObjectiveKind::flowshop2: return flowshop2_makespan(f2_, s);
    }
    fail(ErrorCode::invalid_params, "unknown objective kind");
}

std::string Objective::id() const {
    std::string base = std::string(to_string(kind_)) + "(n=" + std::to_string(n_);
    if (kind_ == ObjectiveKind::search_distance)
        base += ",k=" + std::to_string(sd_k_) + ",target=" + sd_target_->compact();
    return base + ")";
}

nlohmann::json Objective::descriptor() const {
    nlohmann::json doc;
    doc["kind"] = to_string(kind_);
    switch (kind_) {
    case ObjectiveKind::table: {
        doc["n"] = n_;
        nlohmann::json values = nlohmann::json::object();
        for (std::uint64_t r = 0; r < table_.size(); ++r)
            if (table_[r]) values[lex_unrank(n_, r).compact()] = value_to_json(*table_[r]);
        doc["values"] = std::move(values);
        break;
    }
    case ObjectiveKind::inversion: doc["n"] = n_; break;
    case ObjectiveKind::search_distance:
        doc["n"] = n_;
        doc["k"] = sd_k_;
        doc["target"] = sd_target_->to_string();
        break;
    case ObjectiveKind::weighted_completion: {
        nlohmann::json jobs = nlohmann::json::array();
        for (const auto& j : wct_)
            jobs.push_back({{"p", value_to_json(j.p)}, {"w", value_to_json(j.w)}});
        doc["jobs"] = std::move(jobs);
        break;
    }
    case ObjectiveKind::flowshop2: {
        nlohmann::json jobs = nlohmann::json::array();
        for (const auto& j : f2_)
            jobs.push_back({{"a", value_to_json(j.a)}, {"b", value_to_json(j.b)}});
        doc["jobs"] = std::move(jobs);
        break;
    }
    }
    if (known_optima_ && kind_ != ObjectiveKind::search_distance &&
        kind_ != ObjectiveKind::inversion)
        doc["known_optima"] = perms_to_json(*known_optima_);
    return doc;
}

Objective build_search_distance_objective(int n, int k, const Permutation& target, int cap) {
    require_within_cap(n, cap);
    if (target.n() != n) fail(ErrorCode::arity_mismatch, "target order does not match n");
    if (k < 2 || k > n)
        fail(ErrorCode::invalid_k, "k must satisfy 2 <= k <= n (got k=" + std::to_string(k) +
                                       ", n=" + std::to_string(n) + ")");
    const std::uint64_t total = factorial(n);
    std::vector<std::uint32_t> dist(total, std::numeric_limits<std::uint32_t>::max());
    std::deque<std::uint64_t> frontier;
    dist[lex_rank(target)] = 0;
    frontier.push_back(lex_rank(target));
    while (!frontier.empty()) {
        std::uint64_t u = frontier.front();
        frontier.pop_front();
        Permutation pu = lex_unrank(n, u);
        for (const auto& v : k_neighborhood(pu, k)) {
            std::uint64_t rv = lex_rank(v);
            if (dist[rv] == std::numeric_limits<std::uint32_t>::max()) {
                dist[rv] = dist[u] + 1;
                frontier.push_back(rv);
            }
        }
    }
    Objective f;
    f.kind_ = ObjectiveKind::search_distance;
    f.n_ = n;
    f.sd_k_ = k;
    f.sd_target_ = target;
    f.domain_ = ValueDomain::integer;
    f.table_.reserve(total);
    for (std::uint64_t r = 0; r < total; ++r)
        f.table_.emplace_back(Value(static_cast<long long>(dist[r])));
    f.known_optima_ = std::vector<Permutation>{target};
    return f;
}

Value weighted_completion_value(const std::vector<WctJob>& jobs, const Permutation& s) {
    if (s.n() != static_cast<int>(jobs.size()))
        fail(ErrorCode::arity_mismatch, "order does not match job count");
    Value completion(0), total(0);
    for (int i = 0; i < s.n(); ++i) {
        const auto& job = jobs[static_cast<std::size_t>(s.at(i) - 1)];
        completion += job.p;
        total += job.w * completion;
    }
    return total;
}

Value flowshop2_makespan(const std::vector<Flowshop2Job>& jobs, const Permutation& s) {
    if (s.n() != static_cast<int>(jobs.size()))
        fail(ErrorCode::arity_mismatch, "order does not match job count");
    Value m1(0), m2(0);
    for (int i = 0; i < s.n(); ++i) {
        const auto& job = jobs[static_cast<std::size_t>(s.at(i) - 1)];
        m1 += job.a;
        m2 = (m2 > m1 ? m2 : m1) + job.b;
    }
    return m2;
}

namespace {

void reject_unknown_fields(const nlohmann::json& doc, const std::set<std::string>& allowed) {
    for (const auto& [key, unused] : doc.items()) {
        (void)unused;
        if (!allowed.contains(key)) fail(ErrorCode::parse_error, "unknown field '" + key + "'");
    }
}

int require_int_field(const nlohmann::json& doc, const std::string& name) {
    if (!doc.contains(name)) fail(ErrorCode::parse_error, "missing field '" + name + "'");
    if (!doc[name].is_number_integer())
        fail(ErrorCode::parse_error, "field '" + name + "' must be an integer");
    return doc[name].get<int>();
}

std::optional<std::vector<Permutation>> parse_known_optima(const nlohmann::json& doc, int n) {
    if (!doc.contains("known_optima")) return std::nullopt;
    const auto& arr = doc["known_optima"];
    if (!arr.is_array()) fail(ErrorCode::parse_error, "known_optima must be an array");
    std::vector<Permutation> out;
    for (const auto& item : arr) {
        if (!item.is_string()) fail(ErrorCode::parse_error, "known_optima entries must be strings");
        Permutation p = parse_permutation(item.get<std::string>());
        if (p.n() != n) fail(ErrorCode::invalid_params, "known optimum has wrong order");
        out.push_back(std::move(p));
    }
    return out;
}

template <typename JobT, typename MakeJob>
std::vector<JobT> parse_jobs(const nlohmann::json& doc, const char* f1, const char* f2,
                             MakeJob&& make) {
    if (!doc.contains("jobs")) fail(ErrorCode::parse_error, "missing field 'jobs'");
    const auto& arr = doc["jobs"];
    if (!arr.is_array() || arr.empty())
        fail(ErrorCode::parse_error, "'jobs' must be a non-empty array");
    std::vector<JobT> jobs;
    for (const auto& item : arr) {
        if (!item.is_object()) fail(ErrorCode::parse_error, "job entries must be objects");
        reject_unknown_fields(item, {f1, f2});
        if (!item.contains(f1) || !item.contains(f2))
            fail(ErrorCode::parse_error, std::string("job needs fields '") + f1 + "' and '" + f2 +
                                             "'");
        jobs.push_back(make(value_from_json(item[f1], std::string("job field '") + f1 + "'"),
                            value_from_json(item[f2], std::string("job field '") + f2 + "'")));
    }
    return jobs;
}

} // namespace

Objective objective_from_json(const nlohmann::json& doc) {
    if (!doc.is_object()) fail(ErrorCode::parse_error, "objective document must be an object");
    if (!doc.contains("kind") || !doc["kind"].is_string())
        fail(ErrorCode::parse_error, "missing string field 'kind'");
    const std::string kind = doc["kind"].get<std::string>();

    if (kind == "table") {
        reject_unknown_fields(doc, {"kind", "n", "values", "known_optima"});
        int n = require_int_field(doc, "n");
        if (n < kMinOrder) fail(ErrorCode::invalid_params, "n must be at least 1");
        require_within_cap(n, kDefaultEnumerationCap);
        if (!doc.contains("values") || !doc["values"].is_object())
            fail(ErrorCode::parse_error, "missing object field 'values'");
        std::vector<std::pair<std::string, Value>> entries;
        for (const auto& [key, raw] : doc["values"].items()) {
            if (!raw.is_number_integer())
                fail(ErrorCode::parse_error, "table value for '" + key + "' must be an integer");
            entries.emplace_back(key, Value(raw.get<long long>()));
        }
        // completeness first, so holes surface at load time, not at evaluate time
        std::set<std::string> present;
        for (const auto& [key, unused] : entries) {
            (void)unused;
            Permutation p = parse_permutation(key);
            if (p.n() != n)
                fail(ErrorCode::arity_mismatch, "table key '" + key + "' has wrong order");
            present.insert(p.compact());
        }
        if (present.size() != factorial(n)) {
            std::string missing;
            int listed = 0;
            std::uint64_t missing_count = 0;
            for (std::uint64_t r = 0; r < factorial(n); ++r) {
                std::string key = lex_unrank(n, r).compact();
                if (!present.contains(key)) {
                    ++missing_count;
                    if (listed < 20) {
                        if (!missing.empty()) missing += ", ";
                        missing += key;
                        ++listed;
                    }
                }
            }
            if (missing_count > 20)
                missing += ", ... (+" + std::to_string(missing_count - 20) + " more)";
            fail(ErrorCode::incomplete_table, "missing keys: " + missing);
        }
        return Objective::table(n, entries, parse_known_optima(doc, n));
    }
    if (kind == "inversion") {
        reject_unknown_fields(doc, {"kind", "n"});
        return Objective::inversion(require_int_field(doc, "n"));
    }
    if (kind == "search_distance") {
        reject_unknown_fields(doc, {"kind", "n", "k", "target"});
        int n = require_int_field(doc, "n");
        int k = require_int_field(doc, "k");
        if (n < kMinOrder) fail(ErrorCode::invalid_params, "n must be at least 1");
        Permutation target = Permutation::identity(n);
        if (doc.contains("target")) {
            if (!doc["target"].is_string())
                fail(ErrorCode::parse_error, "field 'target' must be a string");
            target = parse_permutation(doc["target"].get<std::string>());
        }
        return build_search_distance_objective(n, k, target);
    }
    if (kind == "weighted_completion") {
        reject_unknown_fields(doc, {"kind", "jobs", "known_optima"});
        auto jobs = parse_jobs<WctJob>(doc, "p", "w",
                                       [](Value p, Value w) { return WctJob{p, w}; });
        int n = static_cast<int>(jobs.size());
        return Objective::weighted_completion(std::move(jobs), parse_known_optima(doc, n));
    }
    if (kind == "flowshop2") {
        reject_unknown_fields(doc, {"kind", "jobs", "known_optima"});
        auto jobs = parse_jobs<Flowshop2Job>(doc, "a", "b",
                                             [](Value a, Value b) { return Flowshop2Job{a, b}; });
        int n = static_cast<int>(jobs.size());
        return Objective::flowshop2(std::move(jobs), parse_known_optima(doc, n));
    }
    fail(ErrorCode::parse_error, "unknown objective kind '" + kind + "'");
}

Objective load_objective(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) fail(ErrorCode::io_error, "cannot read " + path.string());
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        fail(ErrorCode::parse_error, path.string() + ": " + e.what());
    }
    return objective_from_json(doc);
}

std::vector<Permutation> global_optima(const Objective& f, int cap) {
    require_within_cap(f.n(), cap);
    std::vector<Permutation> best;
    std::optional<Value> best_value;
    for_each_permutation(f.n(), [&](Permutation p) {
        Value v = f.evaluate(p);
        if (!best_value || v < *best_value) {
            best_value = v;
            best.clear();
            best.push_back(std::move(p));
        } else if (v == *best_value) {
            best.push_back(std::move(p));
        }
    });
    return best;
}

std::optional<Value> optimum_value(const Objective& f, int cap) {
    if (f.known_optima()) return f.evaluate(f.known_optima()->front());
    if (f.n() > cap) return std::nullopt;
    return f.evaluate(global_optima(f, cap).front());
}

} // namespace kint
