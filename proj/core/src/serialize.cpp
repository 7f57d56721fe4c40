#include "boselab/serialize.hpp"

#include <bit>
#include <cstdint>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace boselab {

namespace {

constexpr char kMagic[4] = {'B', 'L', 'F', 'K'};
constexpr std::uint32_t kVersion = 1;
constexpr char kOrderingTag[16] = "graded-lex";

static_assert(std::endian::native == std::endian::little,
              "state files are little-endian; byte-swapping not implemented");

template <typename T>
void put(std::ostream& os, const T& v) {
    os.write(reinterpret_cast<const char*>(&v), sizeof(T));
}

template <typename T>
void get(std::istream& is, T& v) {
    is.read(reinterpret_cast<char*>(&v), sizeof(T));
}

}  // namespace

void save_state(const std::string& path, const FockVector& psi) {
    const std::string tmp = path + ".tmp";
    {
        std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
        if (!os) throw std::runtime_error("save_state: cannot open " + tmp);
        os.write(kMagic, 4);
        put(os, kVersion);
        put(os, std::uint32_t(psi.basis->mode_count()));
        put(os, std::uint32_t(psi.basis->particle_cutoff()));
        os.write(kOrderingTag, sizeof(kOrderingTag));
        put(os, std::uint64_t(psi.amplitudes.size()));
        os.write(reinterpret_cast<const char*>(psi.amplitudes.data()),
                 psi.amplitudes.size() * sizeof(cdouble));
        if (!os) throw std::runtime_error("save_state: write failed for " + tmp);
    }
    std::filesystem::rename(tmp, path);
}

FockVector load_state(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw std::runtime_error("load_state: cannot open " + path);
    char magic[4];
    is.read(magic, 4);
    if (std::memcmp(magic, kMagic, 4) != 0)
        throw std::runtime_error("load_state: bad magic in " + path);
    std::uint32_t version, M, n_max;
    get(is, version);
    if (version != kVersion) throw std::runtime_error("load_state: unknown version");
    get(is, M);
    get(is, n_max);
    char tag[sizeof(kOrderingTag)];
    is.read(tag, sizeof(tag));
    if (std::memcmp(tag, kOrderingTag, sizeof(tag)) != 0)
        throw std::runtime_error("load_state: unknown basis ordering tag");
    std::uint64_t dim;
    get(is, dim);

    FockVector psi(std::make_shared<const FockBasis>(int(M), int(n_max)));
    if (dim != std::uint64_t(psi.basis->dimension()))
        throw std::runtime_error("load_state: dimension mismatch");
    is.read(reinterpret_cast<char*>(psi.amplitudes.data()), dim * sizeof(cdouble));
    if (!is) throw std::runtime_error("load_state: truncated file " + path);
    return psi;
}

void dump_sparse(const std::string& path, const SparseOp& op) {
    std::ostringstream os;
    os.precision(17);
    os << "# rows " << op.rows() << " cols " << op.cols() << " nnz " << op.nonZeros()
       << "\n";
    for (int k = 0; k < op.outerSize(); ++k)
        for (SparseOp::InnerIterator it(op, k); it; ++it)
            os << it.row() << ' ' << it.col() << ' ' << it.value().real() << ' '
               << it.value().imag() << '\n';
    write_file_atomic(path, os.str());
}

void dump_dense(const std::string& path, const Eigen::MatrixXcd& m) {
    std::ostringstream os;
    os.precision(17);
    os << "# rows " << m.rows() << " cols " << m.cols() << "\n";
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            if (j) os << ' ';
            os << m(i, j).real() << ' ' << m(i, j).imag();
        }
        os << '\n';
    }
    write_file_atomic(path, os.str());
}

void write_file_atomic(const std::string& path, const std::string& contents) {
    const std::string tmp = path + ".tmp";
    {
        std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
        if (!os) throw std::runtime_error("write_file_atomic: cannot open " + tmp);
        os << contents;
        if (!os) throw std::runtime_error("write_file_atomic: write failed " + tmp);
    }
    std::filesystem::rename(tmp, path);
}

} // namespace boselab
