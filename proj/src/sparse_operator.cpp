#include "fockweight/sparse_operator.hpp"

#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>

namespace fockweight {

namespace {

constexpr std::uint64_t kFnvOffset = 0xcbf29ce484222325ULL;
constexpr std::uint64_t kFnvPrime = 0x100000001b3ULL;

void fnv_mix(std::uint64_t& h, std::string_view s) {
  for (unsigned char c : s) {
    h ^= c;
    h *= kFnvPrime;
  }
  h ^= 0xff;  // field separator
  h *= kFnvPrime;
}

template <class Scalar, class Render>
void write_generic(std::ostream& out, const SparseOperator<Scalar>& op, Render&& render) {
  const FockBasis& b = *op.basis();
  out << "# fockweight sparse operator\n"
      << "basis " << b.hash() << " horizon " << b.horizon() << " dimension " << b.dimension() << " mode "
      << op.mode() << "\n";
  op.for_each([&](std::size_t r, std::size_t c, const Scalar& v) { out << r << ' ' << c << ' ' << render(v) << '\n'; });
}

}  // namespace

FockBasis::FockBasis(Graph g, std::size_t horizon) : graph_(std::move(g)), table_(graph_, horizon) {
  std::uint64_t h = kFnvOffset;
  for (VertexId v : graph_.vertex_ids()) fnv_mix(h, graph_.vertex_name(v));
  for (EdgeId e : graph_.edge_ids()) {
    const Edge& ed = graph_.edge(e);
    fnv_mix(h, ed.name);
    fnv_mix(h, graph_.vertex_name(ed.source));
    fnv_mix(h, graph_.vertex_name(ed.range));
  }
  fnv_mix(h, std::to_string(horizon));
  for (const Path& p : table_) fnv_mix(h, label(graph_, p));
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  hash_ = buf;
}

FloatOperator to_float(const RationalOperator& op) {
  FloatOperator out(op.basis());
  op.for_each([&](std::size_t r, std::size_t c, const Rational& v) { out.set(r, c, to_double(v)); });
  return out;
}

GaussianOperator to_gaussian(const RationalOperator& op) {
  GaussianOperator out(op.basis());
  op.for_each([&](std::size_t r, std::size_t c, const Rational& v) { out.set(r, c, Gaussian(v)); });
  return out;
}

ComplexFloatOperator to_complex_float(const FloatOperator& op) {
  ComplexFloatOperator out(op.basis());
  op.for_each([&](std::size_t r, std::size_t c, double v) { out.set(r, c, std::complex<double>(v, 0.0)); });
  return out;
}

void write_triplets(std::ostream& out, const RationalOperator& op) {
  write_generic(out, op, [](const Rational& v) { return to_string(v); });
}

void write_triplets(std::ostream& out, const GaussianOperator& op) {
  write_generic(out, op, [](const Gaussian& v) { return to_string(v.re) + ' ' + to_string(v.im); });
}

void write_triplets(std::ostream& out, const FloatOperator& op) {
  write_generic(out, op, [](double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return std::string(buf);
  });
}

RationalOperator read_rational_triplets(std::istream& in, std::shared_ptr<const FockBasis> basis) {
  std::string line;
  bool have_header = false;
  RationalOperator op(basis);
  std::size_t lineno = 0;
  auto fail = [&](const std::string& msg) {
    throw std::runtime_error("triplets line " + std::to_string(lineno) + ": " + msg);
  };
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ls(line);
    if (!have_header) {
      std::string kb, hash, kh, kd, km, mode;
      std::size_t horizon = 0, dim = 0;
      if (!(ls >> kb >> hash >> kh >> horizon >> kd >> dim >> km >> mode) || kb != "basis" || kh != "horizon" ||
          kd != "dimension" || km != "mode")
        fail("malformed header");
      if (hash != basis->hash() || horizon != basis->horizon() || dim != basis->dimension())
        fail("basis mismatch (file " + hash + ", expected " + basis->hash() + ")");
      if (mode != "rational") fail("expected mode rational, found " + mode);
      have_header = true;
      continue;
    }
    std::size_t r = 0, c = 0;
    std::string value, extra;
    if (!(ls >> r >> c >> value) || (ls >> extra)) fail("expected `row col value`");
    if (r >= basis->dimension() || c >= basis->dimension()) fail("index outside the basis");
    try {
      op.set(r, c, parse_rational(value));
    } catch (const std::invalid_argument& e) {
      fail(e.what());
    }
  }
  if (!have_header) throw std::runtime_error("triplets: missing header");
  return op;
}

}  // namespace fockweight
