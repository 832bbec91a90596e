#include "derandom/family_io.hpp"

#include <fstream>
#include <sstream>

#include <zlib.h>

namespace derandom {
namespace {

std::uint32_t body_crc(const std::string& body) {
    return static_cast<std::uint32_t>(
        crc32(0L, reinterpret_cast<const Bytef*>(body.data()),
              static_cast<uInt>(body.size())));
}

std::string expect_value(const std::string& line, const std::string& key) {
    std::string prefix = key + "=";
    if (line.rfind(prefix, 0) != 0)
        fail(Errc::parse_error, "expected '" + key + "=' line, got '" + line + "'");
    return line.substr(prefix.size());
}

std::int64_t to_int(const std::string& s) {
    try {
        std::size_t used = 0;
        std::int64_t v = std::stoll(s, &used);
        if (used != s.size()) fail(Errc::parse_error, "trailing junk in number '" + s + "'");
        return v;
    } catch (const std::logic_error&) {
        fail(Errc::parse_error, "bad number '" + s + "'");
    }
}

} // namespace

std::string serialize_family(const Family& family, bool valid_flag) {
    std::ostringstream header;
    header << "derandom-family v1\n";
    header << "kind=" << kind_name(family.kind) << "\n";
    header << "n=" << family.n << "\n";
    header << "k=" << family.k << "\n";
    if (family.kind == FamilyKind::splitter) {
        header << "ell=" << family.ell << "\n";
    } else {
        header << "alpha=" << family.alpha.str() << "\n";
    }
    if (family.kind == FamilyKind::mapping) {
        header << "beta=" << family.beta.str() << "\n";
        header << "k0=" << family.k0 << "\n";
        header << "k1=" << family.k1 << "\n";
    }
    header << "uniformity=" << uniformity_str(family.uniformity, family.uniformity_a) << "\n";
    header << "count=" << family.functions.size() << "\n";
    header << "out_of_regime=" << (family.out_of_regime ? 1 : 0) << "\n";
    header << "sampled=" << (family.sampled_pool ? 1 : 0) << "\n";
    header << "seed=" << family.seed << "\n";
    header << "builder=" << family.builder << "\n";
    header << "valid=" << (valid_flag ? 1 : 0) << "\n";
    header << "---\n";

    std::ostringstream body;
    for (const Function& f : family.functions) {
        auto images = f.images();
        for (std::size_t i = 0; i < images.size(); ++i) {
            if (i) body << ' ';
            body << images[i];
        }
        body << '\n';
    }
    std::string body_str = body.str();
    header << body_str << "checksum=" << body_crc(body_str) << "\n";
    return header.str();
}

ParsedFamily parse_family(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    auto next_line = [&]() -> std::string {
        if (!std::getline(in, line)) fail(Errc::parse_error, "unexpected end of family file");
        return line;
    };

    if (next_line() != "derandom-family v1")
        fail(Errc::parse_error, "not a derandom-family v1 file");

    ParsedFamily out;
    Family& fam = out.family;
    fam.kind = parse_kind(expect_value(next_line(), "kind"));
    fam.n = static_cast<int>(to_int(expect_value(next_line(), "n")));
    fam.k = static_cast<int>(to_int(expect_value(next_line(), "k")));
    if (fam.kind == FamilyKind::splitter) {
        fam.ell = static_cast<int>(to_int(expect_value(next_line(), "ell")));
    } else {
        fam.ell = 2;
        fam.alpha = Rational::parse(expect_value(next_line(), "alpha"));
    }
    if (fam.kind == FamilyKind::mapping) {
        fam.beta = Rational::parse(expect_value(next_line(), "beta"));
        fam.k0 = static_cast<int>(to_int(expect_value(next_line(), "k0")));
        fam.k1 = static_cast<int>(to_int(expect_value(next_line(), "k1")));
    }
    parse_uniformity(expect_value(next_line(), "uniformity"), fam.uniformity, fam.uniformity_a);
    std::int64_t count = to_int(expect_value(next_line(), "count"));
    fam.out_of_regime = to_int(expect_value(next_line(), "out_of_regime")) != 0;
    fam.sampled_pool = to_int(expect_value(next_line(), "sampled")) != 0;
    fam.seed = static_cast<std::uint64_t>(to_int(expect_value(next_line(), "seed")));
    fam.builder = expect_value(next_line(), "builder");
    out.valid_flag = to_int(expect_value(next_line(), "valid")) != 0;
    if (next_line() != "---") fail(Errc::parse_error, "missing '---' separator");

    std::string body;
    for (std::int64_t i = 0; i < count; ++i) {
        std::string fn_line = next_line();
        body += fn_line;
        body += '\n';
        std::istringstream vals(fn_line);
        std::vector<std::int32_t> images;
        images.reserve(fam.n);
        std::int64_t v;
        while (vals >> v) images.push_back(static_cast<std::int32_t>(v));
        if (static_cast<int>(images.size()) != fam.n)
            fail(Errc::parse_error, "function line with wrong image count");
        fam.functions.emplace_back(fam.n, fam.ell, std::move(images));
    }
    std::uint32_t declared =
        static_cast<std::uint32_t>(to_int(expect_value(next_line(), "checksum")));
    if (declared != body_crc(body)) fail(Errc::parse_error, "checksum mismatch");
    return out;
}

void write_family_file(const std::string& path, const Family& family, bool valid_flag) {
    std::ofstream out(path, std::ios::binary);
    if (!out) fail(Errc::parse_error, "cannot open '" + path + "' for writing");
    out << serialize_family(family, valid_flag);
}

ParsedFamily read_family_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail(Errc::parse_error, "cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_family(buf.str());
}

} // namespace derandom
