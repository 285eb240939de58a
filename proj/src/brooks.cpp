#include "braidflow/brooks.hpp"

#include "braidflow/sl2.hpp"

#include <sstream>
#include <stdexcept>

namespace braidflow {

namespace {

// occurrences of pattern at starting positions [0, limit) of text
long count_starts(const std::vector<std::int8_t>& text, std::size_t limit,
                  const std::vector<std::int8_t>& pattern) {
    if (pattern.empty() || pattern.size() > text.size()) return 0;
    long count = 0;
    const std::size_t last = std::min(limit, text.size() - pattern.size() + 1);
    for (std::size_t s = 0; s < last; ++s) {
        bool hit = true;
        for (std::size_t k = 0; k < pattern.size(); ++k) {
            if (text[s + k] != pattern[k]) {
                hit = false;
                break;
            }
        }
        if (hit) ++count;
    }
    return count;
}

} // namespace

BrooksQM::BrooksQM(FreeWord pattern) : pattern_(std::move(pattern)) {
    if (pattern_.empty())
        throw std::invalid_argument("Brooks pattern must be non-empty");
    if (!pattern_.is_cyclically_reduced())
        throw std::invalid_argument("Brooks pattern must be cyclically reduced");
}

bool BrooksQM::mixed() const {
    bool has_x = false, has_y = false;
    for (std::int8_t l : pattern_.letters()) {
        if (l == 1 || l == -1) has_x = true;
        if (l == 2 || l == -2) has_y = true;
    }
    return has_x && has_y;
}

long brooks_count(const BrooksQM& q, const FreeWord& g) {
    const auto& text = g.letters();
    const auto& w = q.pattern().letters();
    const auto winv = q.pattern().inverse().letters();
    return count_starts(text, text.size(), w) - count_starts(text, text.size(), winv);
}

long brooks_hom(const BrooksQM& q, const FreeWord& g) {
    const FreeWord core = g.cyclic_reduce();
    if (core.empty()) return 0;
    const auto& c = core.letters();
    const auto& w = q.pattern().letters();

    // unroll enough periods that every start in [0, |c|) can host the pattern
    const std::size_t periods = (c.size() + w.size() - 1 + c.size() - 1) / c.size();
    std::vector<std::int8_t> text;
    text.reserve(periods * c.size());
    for (std::size_t r = 0; r < periods; ++r) text.insert(text.end(), c.begin(), c.end());

    const auto winv = q.pattern().inverse().letters();
    return count_starts(text, c.size(), w) - count_starts(text, c.size(), winv);
}

long qm_on_braid(const BrooksQM& q, const BraidWord& w) {
    if (!q.mixed())
        throw std::invalid_argument(
            "qm_on_braid requires a pattern mentioning both x and y "
            "(single-letter powers do not vanish on the eta subgroup)");
    return brooks_hom(q, p3_to_f2(w));
}

double BraidQM::eval_braid(const BraidWord& w) const {
    const FreeWord image = p3_to_f2(w);
    double out = 0.0;
    for (const auto& [coeff, q] : terms_) out += coeff * static_cast<double>(brooks_hom(q, image));
    return out;
}

double BraidQM::eval_free(const FreeWord& g) const {
    double out = 0.0;
    for (const auto& [coeff, q] : terms_) out += coeff * static_cast<double>(brooks_hom(q, g));
    return out;
}

std::string BraidQM::describe() const {
    std::ostringstream os;
    for (std::size_t i = 0; i < terms_.size(); ++i) {
        if (i) os << " + ";
        os << terms_[i].first << "*brooks(" << terms_[i].second.pattern().str() << ")";
    }
    return os.str();
}

} // namespace braidflow
