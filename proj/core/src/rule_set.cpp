#include "tskstream/rule_set.hpp"

#include <algorithm>
#include <stdexcept>

namespace tsk {

double Rule::activation(std::span<const double> x) const {
    if (x.size() != antecedents.size())
        throw std::invalid_argument("Rule::activation: dimension mismatch");
    double degree = 1.0;
    for (std::size_t j = 0; j < antecedents.size(); ++j) {
        degree = std::min(degree, antecedents[j].eval(x[j]));
        if (degree == 0.0) break;
    }
    return degree;
}

double Rule::linearOutput(std::span<const double> x) const {
    double out = consequent[0];
    for (std::size_t j = 0; j < x.size(); ++j) out += consequent[j + 1] * x[j];
    return out;
}

bool Rule::allVoid() const noexcept {
    return std::all_of(antecedents.begin(), antecedents.end(),
                       [](const MembershipFunction& m) { return m.isVoid(); });
}

RuleSet::RuleSet(std::size_t dimension) : dimension_(dimension) {
    Rule def;
    def.antecedents.assign(dimension, MembershipFunction::voidSet());
    def.consequent.assign(dimension + 1, 0.0);
    defaultId_ = add(std::move(def));
}

RuleId RuleSet::add(Rule rule) {
    if (rule.antecedents.size() != dimension_ || rule.consequent.size() != dimension_ + 1)
        throw std::invalid_argument("RuleSet::add: rule dimension mismatch");
    const RuleId id = nextId_++;
    entries_.push_back({id, std::move(rule)});
    if (!defaultId_ && entries_.back().rule.allVoid()) defaultId_ = id;
    return id;
}

void RuleSet::remove(RuleId id) {
    if (entries_.size() <= 1)
        throw std::logic_error("RuleSet::remove: cannot remove the last rule");
    const std::size_t i = indexOf(id);
    entries_.erase(entries_.begin() + static_cast<std::ptrdiff_t>(i));
    if (defaultId_ && *defaultId_ == id) refreshDefaultId();
}

Rule& RuleSet::at(RuleId id) { return entries_[indexOf(id)].rule; }
const Rule& RuleSet::at(RuleId id) const { return entries_[indexOf(id)].rule; }

bool RuleSet::contains(RuleId id) const noexcept {
    return std::any_of(entries_.begin(), entries_.end(),
                       [id](const Entry& e) { return e.id == id; });
}

std::vector<RuleId> RuleSet::ids() const {
    std::vector<RuleId> out;
    out.reserve(entries_.size());
    for (const auto& e : entries_) out.push_back(e.id);
    return out;
}

std::vector<double> RuleSet::activations(std::span<const double> x) const {
    std::vector<double> mu;
    mu.reserve(entries_.size());
    for (const auto& e : entries_) mu.push_back(e.rule.activation(x));
    return mu;
}

std::optional<std::vector<double>> RuleSet::normalizedWeights(std::span<const double> x) const {
    std::vector<double> mu = activations(x);
    double total = 0.0;
    for (double m : mu) total += m;
    if (total <= 0.0) return std::nullopt;
    for (double& m : mu) m /= total;
    return mu;
}

std::optional<double> RuleSet::predict(std::span<const double> x) const {
    const auto weights = normalizedWeights(x);
    if (!weights) return std::nullopt;
    double out = 0.0;
    for (std::size_t i = 0; i < entries_.size(); ++i) {
        if ((*weights)[i] > 0.0) out += (*weights)[i] * entries_[i].rule.linearOutput(x);
    }
    return out;
}

double RuleSet::meanOutput(std::span<const double> x) const {
    double sum = 0.0;
    for (const auto& e : entries_) sum += e.rule.linearOutput(x);
    return sum / static_cast<double>(entries_.size());
}

void RuleSet::refreshDefaultId() noexcept {
    defaultId_.reset();
    for (const auto& e : entries_) {
        if (e.rule.allVoid()) {
            defaultId_ = e.id;
            return;
        }
    }
}

std::size_t RuleSet::indexOf(RuleId id) const {
    for (std::size_t i = 0; i < entries_.size(); ++i)
        if (entries_[i].id == id) return i;
    throw std::out_of_range("RuleSet: unknown rule id");
}

} // namespace tsk
