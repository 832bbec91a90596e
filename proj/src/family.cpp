#include "derandom/family.hpp"

#include <algorithm>

namespace derandom {

const char* kind_name(FamilyKind k) {
    switch (k) {
        case FamilyKind::splitter: return "splitter";
        case FamilyKind::bisector: return "bisector";
        case FamilyKind::mapping: return "mapping";
        case FamilyKind::universal: return "universal";
    }
    return "?";
}

FamilyKind parse_kind(const std::string& s) {
    if (s == "splitter") return FamilyKind::splitter;
    if (s == "bisector") return FamilyKind::bisector;
    if (s == "mapping") return FamilyKind::mapping;
    if (s == "universal") return FamilyKind::universal;
    fail(Errc::parse_error, "unknown family kind '" + s + "'");
}

std::string uniformity_str(Uniformity u, int a) {
    switch (u) {
        case Uniformity::none: return "none";
        case Uniformity::a_uniform: return "a-uniform:" + std::to_string(a);
        case Uniformity::uniform: return "uniform";
        case Uniformity::strong: return "strong";
    }
    return "none";
}

void parse_uniformity(const std::string& s, Uniformity& u, int& a) {
    a = 0;
    if (s == "none") { u = Uniformity::none; return; }
    if (s == "uniform") { u = Uniformity::uniform; return; }
    if (s == "strong") { u = Uniformity::strong; return; }
    if (s.rfind("a-uniform:", 0) == 0) {
        u = Uniformity::a_uniform;
        try {
            a = std::stoi(s.substr(10));
        } catch (const std::logic_error&) {
            fail(Errc::parse_error, "bad a-uniform value in '" + s + "'");
        }
        return;
    }
    fail(Errc::parse_error, "unknown uniformity '" + s + "'");
}

void Family::validate() const {
    for (const Function& f : functions) {
        if (f.n() != n || f.ell() != ell)
            fail(Errc::bad_params, "family member does not share (n, ell)");
    }
    if (kind != FamilyKind::splitter) {
        if (ell != 2) fail(Errc::bad_params, "binary family must have ell = 2");
        std::int64_t want = ceil_mul(alpha, n);
        for (const Function& f : functions)
            if (f.ones_count() != want)
                fail(Errc::bad_params, "member ones-count != ceil(alpha*n)");
    }
}

void tag_measured_uniformity(Family& fam) {
    int worst = 0;
    bool strong = !fam.functions.empty();
    for (const Function& f : fam.functions) {
        worst = std::max(worst, nonuniformity(f));
        if (strong) {
            std::int64_t flo = f.n() / f.ell(), cei = (f.n() + f.ell() - 1) / f.ell();
            for (std::int64_t c : image_histogram(f))
                if (c < flo || c > cei) { strong = false; break; }
        }
    }
    if (strong) {
        fam.uniformity = Uniformity::strong;
        fam.uniformity_a = 0;
    } else if (worst <= 1) {
        fam.uniformity = Uniformity::uniform;
        fam.uniformity_a = 0;
    } else {
        fam.uniformity = Uniformity::a_uniform;
        fam.uniformity_a = worst;
    }
}

} // namespace derandom
