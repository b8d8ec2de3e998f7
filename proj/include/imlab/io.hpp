// Binary serialization of fields, spectra, and trajectories.
//
// Record layout (little-endian):
//   header: dim (u64), modes-per-axis (u64), box length (f64)
//   payload: re, im (f64 each) for every lattice entry in row-major order
// A trajectory file is a sequence of (time f64, field record) pairs with
// strictly increasing times; readers stop at a clean record boundary and
// reject truncated tails, so checkpoint files can be appended to.
#pragma once

#include <bit>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <stdexcept>
#include <string>

#include "imlab/field.hpp"
#include "imlab/grid.hpp"
#include "imlab/trajectory.hpp"

namespace imlab {

static_assert(std::endian::native == std::endian::little,
              "serialization assumes a little-endian host");
static_assert(sizeof(double) == 8);

namespace detail {

inline void write_u64(std::ostream& os, std::uint64_t v) {
    os.write(reinterpret_cast<const char*>(&v), 8);
}

inline void write_f64(std::ostream& os, double v) {
    os.write(reinterpret_cast<const char*>(&v), 8);
}

inline bool read_u64(std::istream& is, std::uint64_t& v) {
    is.read(reinterpret_cast<char*>(&v), 8);
    return is.gcount() == 8;
}

inline bool read_f64(std::istream& is, double& v) {
    is.read(reinterpret_cast<char*>(&v), 8);
    return is.gcount() == 8;
}

inline void write_header(std::ostream& os, const Grid& g) {
    write_u64(os, static_cast<std::uint64_t>(g.dim));
    write_u64(os, static_cast<std::uint64_t>(g.modes));
    write_f64(os, g.box);
}

inline Grid read_header(std::istream& is, const std::string& what) {
    std::uint64_t dim = 0;
    std::uint64_t modes = 0;
    double box = 0.0;
    if (!read_u64(is, dim) || !read_u64(is, modes) || !read_f64(is, box))
        throw std::runtime_error(what + ": truncated header");
    if (dim < 1 || dim > 3)
        throw std::runtime_error(what + ": dimension " + std::to_string(dim) + " out of range");
    if (modes < 4 || modes > (1u << 20) || modes % 2 != 0)
        throw std::runtime_error(what + ": invalid mode count " + std::to_string(modes));
    if (!(box > 0.0) || !std::isfinite(box))
        throw std::runtime_error(what + ": invalid box length");
    return make_grid(static_cast<int>(dim), static_cast<int>(modes), box);
}

inline void write_payload(std::ostream& os, const std::vector<Complex>& v) {
    for (const Complex& c : v) {
        write_f64(os, c.real());
        write_f64(os, c.imag());
    }
}

inline void read_payload(std::istream& is, std::vector<Complex>& v, const std::string& what) {
    for (Complex& c : v) {
        double re = 0.0;
        double im = 0.0;
        if (!read_f64(is, re) || !read_f64(is, im))
            throw std::runtime_error(what + ": truncated payload");
        c = Complex{re, im};
    }
}

}  // namespace detail

inline void write_field(std::ostream& os, const Field& u) {
    detail::write_header(os, u.grid);
    detail::write_payload(os, u.values);
}

inline Field read_field(std::istream& is) {
    const Grid g = detail::read_header(is, "field");
    Field u = Field::zero(g);
    detail::read_payload(is, u.values, "field");
    return u;
}

inline void write_spectrum(std::ostream& os, const Spectrum& s) {
    detail::write_header(os, s.grid);
    detail::write_payload(os, s.coeffs);
}

inline Spectrum read_spectrum(std::istream& is) {
    const Grid g = detail::read_header(is, "spectrum");
    Spectrum s = Spectrum::zero(g);
    detail::read_payload(is, s.coeffs, "spectrum");
    return s;
}

inline void save_field(const std::filesystem::path& path, const Field& u) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw std::runtime_error("cannot open for writing: " + path.string());
    write_field(os, u);
    if (!os) throw std::runtime_error("write failed: " + path.string());
}

inline Field load_field(const std::filesystem::path& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw std::runtime_error("cannot open for reading: " + path.string());
    return read_field(is);
}

inline void save_spectrum(const std::filesystem::path& path, const Spectrum& s) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw std::runtime_error("cannot open for writing: " + path.string());
    write_spectrum(os, s);
    if (!os) throw std::runtime_error("write failed: " + path.string());
}

inline Spectrum load_spectrum(const std::filesystem::path& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw std::runtime_error("cannot open for reading: " + path.string());
    return read_spectrum(is);
}

inline void save_trajectory(const std::filesystem::path& path, const Trajectory& traj) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw std::runtime_error("cannot open for writing: " + path.string());
    for (std::size_t i = 0; i < traj.size(); ++i) {
        detail::write_f64(os, traj.times[i]);
        write_field(os, traj.fields[i]);
    }
    if (!os) throw std::runtime_error("write failed: " + path.string());
}

// Appends records after the last checkpoint; the first appended time must
// extend the file's strictly increasing time sequence.
inline void append_trajectory(const std::filesystem::path& path, const Trajectory& traj) {
    std::ofstream os(path, std::ios::binary | std::ios::app);
    if (!os) throw std::runtime_error("cannot open for appending: " + path.string());
    for (std::size_t i = 0; i < traj.size(); ++i) {
        detail::write_f64(os, traj.times[i]);
        write_field(os, traj.fields[i]);
    }
    if (!os) throw std::runtime_error("append failed: " + path.string());
}

inline Trajectory load_trajectory(const std::filesystem::path& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw std::runtime_error("cannot open for reading: " + path.string());
    Trajectory traj;
    bool first = true;
    while (true) {
        double t = 0.0;
        if (!detail::read_f64(is, t)) {
            if (is.eof()) break;  // clean record boundary
            throw std::runtime_error("trajectory: read error in " + path.string());
        }
        Field u = read_field(is);
        if (first) {
            traj.grid = u.grid;
            first = false;
        }
        traj.append(t, std::move(u));
    }
    if (first) throw std::runtime_error("trajectory: empty file " + path.string());
    return traj;
}

}  // namespace imlab
