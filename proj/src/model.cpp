// Domain type helpers: typing, corpus lookups, and lifecycle derivations.
#include "tacap/model.hpp"

#include <algorithm>

namespace tacap {

// ─── Typing ──────────────────────────────────────────────────────────────

bool is_perceptual(CaType t) {
    return t == CaType::Visual || t == CaType::Touch || t == CaType::Kinaesthetic;
}

char type_prefix(CaType t) {
    switch (t) {
        case CaType::Cognitive:    return 'C';
        case CaType::Visual:       return 'V';
        case CaType::Touch:        return 'T';
        case CaType::Kinaesthetic: return 'K';
        case CaType::Motor:        return 'M';
    }
    return '?';
}

const char* type_name(CaType t) {
    switch (t) {
        case CaType::Cognitive:    return "Cognitive";
        case CaType::Visual:       return "Visual";
        case CaType::Touch:        return "Touch";
        case CaType::Kinaesthetic: return "Kinaesthetic";
        case CaType::Motor:        return "Motor";
    }
    return "?";
}

std::optional<CaType> type_from_name(std::string_view name) {
    if (name == "Cognitive")    return CaType::Cognitive;
    if (name == "Visual")       return CaType::Visual;
    if (name == "Touch")        return CaType::Touch;
    if (name == "Kinaesthetic") return CaType::Kinaesthetic;
    if (name == "Motor")        return CaType::Motor;
    return std::nullopt;
}

std::optional<CaType> ca_type_from_id(std::string_view id) {
    if (id.empty()) return std::nullopt;
    switch (id.front()) {
        case 'C': return CaType::Cognitive;
        case 'V': return CaType::Visual;
        case 'T': return CaType::Touch;
        case 'K': return CaType::Kinaesthetic;
        case 'M': return CaType::Motor;
        default:  return std::nullopt;
    }
}

// ─── Separators ──────────────────────────────────────────────────────────

int sep_level(Sep s) {
    switch (s) {
        case Sep::Start:
        case Sep::Amp:
        case Sep::Stop:  return 0;
        case Sep::Comma: return 1;
        case Sep::Semi:  return 2;
        case Sep::Colon: return 3;
    }
    return 0;
}

// ─── Corpus lookups ──────────────────────────────────────────────────────

const std::string* Corpus::meta_value(std::string_view key) const {
    for (const auto& [k, v] : meta)
        if (k == key) return &v;
    return nullptr;
}

long long Corpus::end_time_micro() const {
    if (const std::string* v = meta_value("end_time")) {
        if (auto d = parse_dec(*v)) return d->micro;
    }
    long long latest = 0;
    for (const auto& ca : cas) {
        latest = std::max(latest, ca.p.igtig.micro);
        if (ca.p.d50) {
            if (auto de = decay_end_micro(ca)) latest = std::max(latest, *de);
        }
    }
    return latest;
}

std::vector<std::string> Corpus::known_missing_ids() const {
    std::vector<std::string> ids;
    const std::string* v = meta_value("known_missing");
    if (!v) return ids;
    std::string cur;
    for (char c : *v) {
        if (c == ',' || c == ' ' || c == '\t') {
            if (!cur.empty()) ids.push_back(std::move(cur)), cur.clear();
        } else {
            cur += c;
        }
    }
    if (!cur.empty()) ids.push_back(std::move(cur));
    return ids;
}

void Corpus::build_index() const {
    if (index_.size() == cas.size() && !cas.empty()) return;
    index_.clear();
    for (std::size_t i = 0; i < cas.size(); ++i) index_.emplace(cas[i].id, i);
}

const CellAssembly* Corpus::find(std::string_view id) const {
    build_index();
    auto it = index_.find(std::string(id));
    return it == index_.end() ? nullptr : &cas[it->second];
}

int Corpus::seq_of(std::string_view id) const {
    const CellAssembly* ca = find(id);
    return ca ? ca->seq : 0;
}

// ─── Lifecycle derivations ───────────────────────────────────────────────
// Priming and decay are symmetric around their half-time anchors:
// (prime_start + igtig)/2 = p50 and (igtex + decay_end)/2 = d50.

long long prime_start_micro(const CellAssembly& ca) {
    return 2 * ca.p.p50.micro - ca.p.igtig.micro;
}

std::optional<long long> decay_end_micro(const CellAssembly& ca) {
    if (!ca.p.igtex || !ca.p.d50) return std::nullopt;
    return 2 * ca.p.d50->micro - ca.p.igtex->micro;
}

std::optional<long long> duration_micro(const CellAssembly& ca) {
    if (!ca.p.igtex) return std::nullopt;
    return ca.p.igtex->micro - ca.p.igtig.micro;
}

long long fatigue_micro(const CellAssembly& ca) {
    return ca.p.igmax.micro - ca.p.igfat.micro;
}

} // namespace tacap
