#pragma once

#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "embgc/complex_e.hpp"
#include "embgc/complex_hh.hpp"

namespace embgc {

// Disk cache for computed slices. Layout: one directory per
// (parity_m, parity_n, s, t) under a format-version root, with one basis file
// and one differential matrix per level; the bicolored complex lives in an
// "hh/" namespace. Writes are atomic (temp file + rename); reads validate the
// version header and the stated counts and fail soft on any mismatch.
class SliceCache {
public:
    static constexpr const char* kVersion = "v1";

    explicit SliceCache(std::filesystem::path root) : root_(std::move(root)) {}

    const std::filesystem::path& root() const { return root_; }

    std::filesystem::path epi_dir(int mpar, int npar, int s, int t, bool reduced) const {
        std::string name = std::string("m") + (mpar ? "o" : "e") + "n" + (npar ? "o" : "e");
        std::string st = "s" + std::to_string(s) + "t" + std::to_string(t) + (reduced ? "r" : "");
        return root_ / kVersion / "e" / name / st;
    }
    std::filesystem::path hh_dir(int mpar, int npar, int s, int t, bool connected) const {
        std::string name = std::string("m") + (mpar ? "o" : "e") + "n" + (npar ? "o" : "e");
        std::string st = "s" + std::to_string(s) + "t" + std::to_string(t) + (connected ? "" : "f");
        return root_ / kVersion / "hh" / name / st;
    }

    bool store_epi(const EpiSlice& slice) const {
        auto dir = epi_dir(slice.mpar, slice.npar, slice.s, slice.t, slice.reduced);
        std::error_code ec;
        std::filesystem::create_directories(dir, ec);
        if (ec) return false;
        for (const auto& [I, basis] : slice.bases) {
            std::ostringstream os;
            os << "# embgc basis " << kVersion << " n=" << basis.size() << "\n";
            for (const auto& g : basis) os << encode(g) << "\n";
            if (!atomic_write(dir / level_basis_name(I), os.str())) return false;
            std::ostringstream ms;
            write_triplets(ms, slice.diff.at(I));
            if (!atomic_write(dir / level_matrix_name(I), ms.str())) return false;
        }
        std::ostringstream meta;
        meta << "# embgc slice " << kVersion << "\nlevels=";
        bool first = true;
        for (const auto& [I, basis] : slice.bases) {
            if (!first) meta << ',';
            first = false;
            meta << I;
        }
        meta << "\n";
        return atomic_write(dir / "meta.txt", meta.str());
    }

    std::optional<EpiSlice> load_epi(int mpar, int npar, int s, int t, bool reduced) const {
        auto dir = epi_dir(mpar, npar, s, t, reduced);
        auto levels = read_meta(dir / "meta.txt");
        if (!levels) return std::nullopt;
        EpiSlice slice;
        slice.mpar = mpar;
        slice.npar = npar;
        slice.s = s;
        slice.t = t;
        slice.reduced = reduced;
        try {
            for (int I : *levels) {
                auto lines = read_basis_lines(dir / level_basis_name(I));
                if (!lines) return std::nullopt;
                std::vector<OrientedGraph> basis;
                basis.reserve(lines->size());
                for (const auto& ln : *lines) basis.push_back(decode(ln));
                std::ifstream mf(dir / level_matrix_name(I));
                if (!mf) return std::nullopt;
                SparseMatrix mat = read_triplets(mf);
                if (mat.cols != static_cast<int>(basis.size())) return std::nullopt;
                slice.bases.emplace(I, std::move(basis));
                slice.diff.emplace(I, std::move(mat));
            }
            // shape consistency across levels
            for (const auto& [I, mat] : slice.diff)
                if (mat.rows != slice.dim(I + 1)) return std::nullopt;
        } catch (const std::exception&) {
            return std::nullopt;
        }
        return slice;
    }

    bool store_hh(const HHSlice& slice) const {
        auto dir = hh_dir(slice.mpar, slice.npar, slice.s, slice.t, slice.connected);
        std::error_code ec;
        std::filesystem::create_directories(dir, ec);
        if (ec) return false;
        std::ostringstream meta;
        meta << "# embgc slice " << kVersion << "\nlevels=";
        bool first = true;
        for (const auto& [k, level] : slice.levels) {
            std::ostringstream os;
            os << "# embgc basis " << kVersion << " n=" << level.basis.size() << "\n";
            for (int si : level.basis) os << encode(level.symbols[si]) << "\n";
            if (!atomic_write(dir / level_basis_name(k), os.str())) return false;
            std::ostringstream ms;
            write_triplets(ms, slice.diff.at(k));
            if (!atomic_write(dir / level_matrix_name(k), ms.str())) return false;
            if (!first) meta << ',';
            first = false;
            meta << k;
        }
        meta << "\n";
        return atomic_write(dir / "meta.txt", meta.str());
    }

    // Loaded slices carry the chosen basis as their symbol list (the
    // elimination bookkeeping is not persisted); dimensions, differentials and
    // therefore homology and Euler characteristics are fully reconstructed.
    std::optional<HHSlice> load_hh(int mpar, int npar, int s, int t, bool connected) const {
        auto dir = hh_dir(mpar, npar, s, t, connected);
        auto levels = read_meta(dir / "meta.txt");
        if (!levels) return std::nullopt;
        HHSlice slice;
        slice.mpar = mpar;
        slice.npar = npar;
        slice.s = s;
        slice.t = t;
        slice.connected = connected;
        try {
            for (int k : *levels) {
                auto lines = read_basis_lines(dir / level_basis_name(k));
                if (!lines) return std::nullopt;
                HHSlice::Level level;
                for (const auto& ln : *lines) {
                    level.basis.push_back(static_cast<int>(level.symbols.size()));
                    level.symbols.push_back(decode_bicolor(ln));
                }
                std::ifstream mf(dir / level_matrix_name(k));
                if (!mf) return std::nullopt;
                SparseMatrix mat = read_triplets(mf);
                if (mat.cols != static_cast<int>(level.basis.size())) return std::nullopt;
                slice.levels.emplace(k, std::move(level));
                slice.diff.emplace(k, std::move(mat));
            }
            for (const auto& [k, mat] : slice.diff)
                if (mat.rows != slice.dim(k - 1)) return std::nullopt;
        } catch (const std::exception&) {
            return std::nullopt;
        }
        return slice;
    }

private:
    static std::string level_basis_name(int I) { return "basis_d" + std::to_string(I) + ".txt"; }
    static std::string level_matrix_name(int I) { return "diff_d" + std::to_string(I) + ".mat"; }

    bool atomic_write(const std::filesystem::path& path, const std::string& content) const {
        auto tmp = path;
        tmp += ".tmp";
        {
            std::ofstream out(tmp, std::ios::trunc);
            if (!out) return false;
            out << content;
            if (!out.flush()) return false;
        }
        std::error_code ec;
        std::filesystem::rename(tmp, path, ec);
        return !ec;
    }

    static std::optional<std::vector<int>> read_meta(const std::filesystem::path& path) {
        std::ifstream in(path);
        if (!in) return std::nullopt;
        std::string header, levels;
        if (!std::getline(in, header) || header.rfind("# embgc slice", 0) != 0) return std::nullopt;
        if (!std::getline(in, levels) || levels.rfind("levels=", 0) != 0) return std::nullopt;
        std::vector<int> out;
        std::string list = levels.substr(7);
        if (list.empty()) return out;
        std::istringstream ls(list);
        std::string item;
        while (std::getline(ls, item, ',')) {
            try {
                out.push_back(std::stoi(item));
            } catch (const std::exception&) {
                return std::nullopt;
            }
        }
        return out;
    }

    static std::optional<std::vector<std::string>> read_basis_lines(const std::filesystem::path& path) {
        std::ifstream in(path);
        if (!in) return std::nullopt;
        std::string header;
        if (!std::getline(in, header)) return std::nullopt;
        auto pos = header.find("n=");
        if (header.rfind("# embgc basis", 0) != 0 || pos == std::string::npos) return std::nullopt;
        std::size_t count = 0;
        try {
            count = static_cast<std::size_t>(std::stoul(header.substr(pos + 2)));
        } catch (const std::exception&) {
            return std::nullopt;
        }
        std::vector<std::string> lines;
        std::string ln;
        while (std::getline(in, ln))
            if (!ln.empty()) lines.push_back(ln);
        if (lines.size() != count) return std::nullopt;  // truncated or padded
        return lines;
    }

    std::filesystem::path root_;
};

}  // namespace embgc
