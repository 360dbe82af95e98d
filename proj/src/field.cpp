#include "shearsub/field.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>

namespace shearsub {

namespace {

template <typename T>
void write_header(std::ostream& os, const Field<T>& f) {
    os << "# eps=" << f.eps.str() << " origin=" << f.ox << "," << f.oy << " rows=" << f.ny
       << " cols=" << f.nx << " boundary=";
    if (f.boundary == Boundary::periodic)
        os << "periodic:" << f.px << "," << f.py;
    else
        os << "zero";
    os << "\n";
}

struct Header {
    EpsWord eps;
    long long ox, oy, rows, cols;
    Boundary boundary;
    long long px = 0, py = 0;
};

Header parse_header(const std::string& line) {
    Header h{};
    auto grab = [&](const std::string& key) {
        auto pos = line.find(key + "=");
        if (pos == std::string::npos) throw std::runtime_error("field CSV: missing " + key);
        auto end = line.find(' ', pos);
        return line.substr(pos + key.size() + 1,
                           end == std::string::npos ? std::string::npos : end - pos - key.size() - 1);
    };
    h.eps = EpsWord::from_string(grab("eps"));
    std::string org = grab("origin");
    auto comma = org.find(',');
    h.ox = std::stoll(org.substr(0, comma));
    h.oy = std::stoll(org.substr(comma + 1));
    h.rows = std::stoll(grab("rows"));
    h.cols = std::stoll(grab("cols"));
    std::string b = grab("boundary");
    if (b == "zero") {
        h.boundary = Boundary::zero;
    } else if (b.rfind("periodic:", 0) == 0) {
        h.boundary = Boundary::periodic;
        auto rest = b.substr(9);
        auto c2 = rest.find(',');
        h.px = std::stoll(rest.substr(0, c2));
        h.py = std::stoll(rest.substr(c2 + 1));
    } else {
        throw std::runtime_error("field CSV: bad boundary spec '" + b + "'");
    }
    return h;
}

template <typename T, typename Parse>
Field<T> read_csv_impl(std::istream& is, Parse parse) {
    std::string line;
    if (!std::getline(is, line) || line.empty() || line[0] != '#')
        throw std::runtime_error("field CSV: missing header line");
    Header h = parse_header(line);
    Field<T> f = Field<T>::zeros(h.ox, h.oy, h.cols, h.rows);
    f.eps = h.eps;
    f.boundary = h.boundary;
    f.px = h.px;
    f.py = h.py;
    for (long long r = 0; r < h.rows; ++r) {
        if (!std::getline(is, line)) throw std::runtime_error("field CSV: truncated");
        std::stringstream ss(line);
        std::string cell;
        for (long long c = 0; c < h.cols; ++c) {
            if (!std::getline(ss, cell, ',')) throw std::runtime_error("field CSV: short row");
            f.ref(h.ox + c, h.oy + r) = parse(cell);
        }
    }
    return f;
}

}  // namespace

void write_csv(std::ostream& os, const FieldD& f) {
    write_header(os, f);
    for (long long y = f.oy; y < f.oy + f.ny; ++y) {
        for (long long x = f.ox; x < f.ox + f.nx; ++x) {
            if (x != f.ox) os << ",";
            os << f.ref(x, y).str();
        }
        os << "\n";
    }
}

void write_csv(std::ostream& os, const FieldF& f) {
    write_header(os, f);
    os << std::setprecision(17);
    for (long long y = f.oy; y < f.oy + f.ny; ++y) {
        for (long long x = f.ox; x < f.ox + f.nx; ++x) {
            if (x != f.ox) os << ",";
            os << f.ref(x, y);
        }
        os << "\n";
    }
}

FieldD read_csv_dyadic(std::istream& is) {
    return read_csv_impl<Dyadic>(is, [](const std::string& s) { return Dyadic::parse(s); });
}

FieldF read_csv_float(std::istream& is) {
    return read_csv_impl<double>(is, [](const std::string& s) {
        // accept both decimal and exact dyadic cells
        if (s.find("/2^") != std::string::npos) return Dyadic::parse(s).to_double();
        return std::stod(s);
    });
}

void write_csv_file(const std::string& path, const FieldD& f) {
    std::ofstream os(path);
    if (!os) throw std::runtime_error("cannot open " + path);
    write_csv(os, f);
}

FieldD read_csv_file_dyadic(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw std::runtime_error("cannot open " + path);
    return read_csv_dyadic(is);
}

void write_pgm(std::ostream& os, const FieldF& f) {
    double lo = 0, hi = 0;
    if (!f.values.empty()) {
        lo = *std::min_element(f.values.begin(), f.values.end());
        hi = *std::max_element(f.values.begin(), f.values.end());
    }
    os << "P5\n";
    if (hi > lo)
        os << "# scale: gray = round(255 * (v - " << lo << ") / " << (hi - lo) << ")\n";
    else
        os << "# scale: constant field " << lo << " -> gray 128\n";
    os << f.nx << " " << f.ny << "\n255\n";
    for (long long y = f.oy; y < f.oy + f.ny; ++y)
        for (long long x = f.ox; x < f.ox + f.nx; ++x) {
            double v = f.ref(x, y);
            int g = hi > lo ? static_cast<int>(std::lround(255.0 * (v - lo) / (hi - lo))) : 128;
            os.put(static_cast<char>(std::clamp(g, 0, 255)));
        }
}

void write_pgm_file(const std::string& path, const FieldF& f) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw std::runtime_error("cannot open " + path);
    write_pgm(os, f);
}

FieldF to_float(const FieldD& f) {
    FieldF g;
    g.ox = f.ox;
    g.oy = f.oy;
    g.nx = f.nx;
    g.ny = f.ny;
    g.eps = f.eps;
    g.boundary = f.boundary;
    g.px = f.px;
    g.py = f.py;
    g.values.reserve(f.values.size());
    for (const auto& v : f.values) g.values.push_back(v.to_double());
    return g;
}

}  // namespace shearsub
