#pragma once

// Randomized compression of an OCT instance (G, k) into a gammoid matrix over
// the literals of a bipartization set, the decoder that decides the instance
// from that matrix alone, and the binary format of the compressed instance.
//
// Binary layout (integers little-endian):
//
//   "OCTK" | u16 version = 1 | u32 k | u32 |X| | u32 eps_bits | u64 seed |
//   u32 n | u32 m | u32 len, p as big-endian magnitude bytes |
//   2|X| x (u32 len, UTF-8 literal label) in (x1, x2) pair order |
//   2|X| rows x 4|X| columns x (u32 len, big-endian magnitude bytes) |
//   u32 CRC-32 of everything before it
//
// Magnitudes use the minimal number of bytes (zero has length 0). Matrix
// columns are interleaved: literal i, then its shadow.

#include <zlib.h>

#include <cstdint>
#include <cstring>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_set>
#include <variant>
#include <vector>

#include "octk/field.hpp"
#include "octk/gammoid.hpp"
#include "octk/graph.hpp"
#include "octk/matrix.hpp"
#include "octk/oct.hpp"

namespace octk {

inline constexpr char kFormatMagic[4] = {'O', 'C', 'T', 'K'};
inline constexpr std::uint16_t kFormatVersion = 1;
/// Upper limit on eps_bits accepted anywhere; keeps entry sizes sane.
inline constexpr std::uint32_t kMaxEpsBits = 4096;

class FormatError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// The compressed instance. Holds no reference to the source graph; n and m
/// are provenance only and the decoder ignores them.
struct CompressedInstance {
  GammoidRep rep;                           // 2|X| x 4|X| over the literals
  std::uint32_t k = 0;
  std::vector<std::string> literal_labels;  // 2|X|, (x1, x2) pairs
  std::uint32_t eps_bits = 0;               // declared error 2^-eps_bits
  std::uint64_t seed = 0;
  std::uint32_t n = 0, m = 0;

  std::size_t x_count() const { return literal_labels.size() / 2; }
  friend bool operator==(const CompressedInstance&, const CompressedInstance&) = default;
};

enum class EarlyReason { SmallKSolved, HeuristicXTooLarge, HeuristicXWithinK };

inline const char* to_string(EarlyReason r) {
  switch (r) {
    case EarlyReason::SmallKSolved: return "small-k-solved";
    case EarlyReason::HeuristicXTooLarge: return "heuristic-X-too-large";
    case EarlyReason::HeuristicXWithinK: return "heuristic-X-within-k";
  }
  return "?";
}

/// Constant-size answer when the pipeline decides on its own. The
/// too-large exit needs an approximation ratio the greedy set does not have,
/// so compress never produces HeuristicXTooLarge.
struct EarlyDecision {
  bool yes = false;
  EarlyReason reason = EarlyReason::SmallKSolved;
  std::vector<Vertex> solution;  // when known
};

using CompressResult = std::variant<CompressedInstance, EarlyDecision>;

struct CompressOptions {
  RepresentOptions represent;
  /// Fresh seeds tried when the all-shadow column set comes out dependent.
  unsigned max_reseeds = 8;
};

/// Compression with a caller-supplied bipartization set X (any size): the
/// auxiliary graph G' and its literals X', then a representation of the
/// gammoid of G' over X' at half the error budget.
inline CompressedInstance compress_with_bipartization_set(const UndirectedGraph& g, std::uint32_t k,
                                                          std::span<const Vertex> x_set,
                                                          std::uint32_t eps_bits, std::uint64_t seed,
                                                          const CompressOptions& opt = {}) {
  if (eps_bits < 1 || eps_bits > kMaxEpsBits) throw std::invalid_argument("eps_bits out of range");
  AuxiliaryGraph aux = build_auxiliary_graph(g, x_set);
  TerminalDigraph td = build_terminal_digraph(aux.graph, aux.literals);

  std::vector<Label> shadows;
  for (TerminalIndex i = 0; i < td.terminal_count(); ++i) shadows.push_back(shadow_column(i));

  std::optional<GammoidRep> rep;
  for (unsigned attempt = 0; attempt <= opt.max_reseeds && !rep; ++attempt) {
    GammoidRep candidate = represent_gammoid(td, eps_bits + 1, seed + attempt, opt.represent);
    if (is_independent(candidate.matrix, shadows)) rep = std::move(candidate);
  }
  if (!rep) throw RepresentationError("representation failed on every reseed");

  CompressedInstance c;
  c.rep = std::move(*rep);
  c.k = k;
  for (Vertex x : aux.X) {
    c.literal_labels.push_back(std::to_string(x + 1) + ".1");
    c.literal_labels.push_back(std::to_string(x + 1) + ".2");
  }
  c.eps_bits = eps_bits;
  c.seed = seed;
  c.n = static_cast<std::uint32_t>(g.vertex_count());
  c.m = static_cast<std::uint32_t>(g.edge_count());
  return c;
}

/// Full pipeline. Small budgets (2^k <= n, i.e. k <= log2 n) are solved
/// exactly; otherwise a greedy bipartization set X either already answers
/// YES (|X| <= k) or is compressed.
inline CompressResult compress(const UndirectedGraph& g, std::uint32_t k, std::uint32_t eps_bits,
                               std::uint64_t seed, const CompressOptions& opt = {}) {
  if (eps_bits < 1 || eps_bits > kMaxEpsBits) throw std::invalid_argument("eps_bits out of range");
  const std::size_t n = g.vertex_count();
  if (n >= 1 && k < 64 && (std::uint64_t{1} << k) <= n) {
    OctAnswer a = iterative_compression_solve(g, k);
    return EarlyDecision{a.yes, EarlyReason::SmallKSolved, std::move(a.solution)};
  }
  std::vector<Vertex> x = greedy_bipartization_set(g);
  if (x.size() <= k) return EarlyDecision{true, EarlyReason::HeuristicXWithinK, std::move(x)};
  return compress_with_bipartization_set(g, k, x, eps_bits, seed, opt);
}

inline void validate(const CompressedInstance& c) {
  const std::size_t t = c.literal_labels.size();
  if (t % 2 != 0) throw FormatError("odd number of literal labels");
  if (c.rep.matrix.rows() != t || c.rep.matrix.cols() != 2 * t)
    throw FormatError("matrix shape does not match the literal count");
  std::unordered_set<std::string> seen;
  for (const auto& l : c.literal_labels)
    if (!seen.insert(l).second) throw FormatError("duplicate literal label '" + l + "'");
  if (c.eps_bits < 1 || c.eps_bits > kMaxEpsBits) throw FormatError("eps_bits out of range");
}

struct Decision {
  bool yes = false;
  std::size_t minimum = 0;  // exact min over (U, split) unless stopped early
  std::size_t representation_failures = 0;
};

/// Decides (G, k) from the matrix, k and the literal count alone: YES iff
/// some U and valid split reach |X \ U| + lambda <= k, where lambda is the
/// largest T' subset of T linked to S in G' - X'(X \ U) as certified by
/// independence. Certified linkage never exceeds true linkage, so a YES
/// instance is never answered NO.
inline Decision decide_compressed_detail(const CompressedInstance& c, bool stop_early,
                                         unsigned threads = 1) {
  validate(c);
  MatrixCutBackend backend(c.rep);
  RsvOptions opt{threads, stop_early ? std::optional<std::size_t>(c.k) : std::nullopt};
  RsvMinimum best = rsv_minimum(c.x_count(), backend, opt);
  return {best.size <= c.k, best.size, best.representation_failures};
}

inline bool decide_compressed(const CompressedInstance& c) {
  return decide_compressed_detail(c, true).yes;
}

// ---------------------------------------------------------------------------
// Serialization

namespace detail {

class ByteWriter {
public:
  void u16(std::uint16_t v) { put_le(v, 2); }
  void u32(std::uint32_t v) { put_le(v, 4); }
  void u64(std::uint64_t v) { put_le(v, 8); }
  void raw(std::string_view s) { out_.append(s); }

  void blob(std::string_view s) {
    u32(static_cast<std::uint32_t>(s.size()));
    raw(s);
  }

  void magnitude(const mpz_class& x) {
    std::string bytes;
    if (x != 0) {
      bytes.resize((bit_length(x) + 7) / 8);
      std::size_t written = 0;
      mpz_export(bytes.data(), &written, 1, 1, 1, 0, x.get_mpz_t());
      bytes.resize(written);
    }
    blob(bytes);
  }

  std::string& bytes() { return out_; }

private:
  void put_le(std::uint64_t v, int width) {
    for (int i = 0; i < width; ++i) out_.push_back(static_cast<char>((v >> (8 * i)) & 0xFF));
  }
  std::string out_;
};

class ByteReader {
public:
  explicit ByteReader(std::string_view in) : in_(in) {}

  std::uint64_t le(int width, const char* what) {
    need(static_cast<std::size_t>(width), what);
    std::uint64_t v = 0;
    for (int i = 0; i < width; ++i)
      v |= std::uint64_t{static_cast<unsigned char>(in_[pos_ + i])} << (8 * i);
    pos_ += static_cast<std::size_t>(width);
    return v;
  }

  std::string_view raw(std::size_t len, const char* what) {
    need(len, what);
    auto s = in_.substr(pos_, len);
    pos_ += len;
    return s;
  }

  std::string_view blob(const char* what) {
    auto len = static_cast<std::size_t>(le(4, what));
    return raw(len, what);
  }

  mpz_class magnitude(const char* what) {
    auto b = blob(what);
    if (!b.empty() && b.front() == '\0')
      throw FormatError(std::string(what) + ": non-minimal integer encoding");
    mpz_class x;
    if (!b.empty()) mpz_import(x.get_mpz_t(), b.size(), 1, 1, 1, 0, b.data());
    return x;
  }

  std::size_t position() const { return pos_; }
  std::size_t remaining() const { return in_.size() - pos_; }

private:
  void need(std::size_t len, const char* what) {
    if (in_.size() - pos_ < len) throw FormatError(std::string("truncated input reading ") + what);
  }
  std::string_view in_;
  std::size_t pos_ = 0;
};

inline std::uint32_t crc32_of(std::string_view bytes) {
  uLong crc = ::crc32(0L, Z_NULL, 0);
  crc = ::crc32(crc, reinterpret_cast<const Bytef*>(bytes.data()), static_cast<uInt>(bytes.size()));
  return static_cast<std::uint32_t>(crc);
}

}  // namespace detail

inline std::string serialize(const CompressedInstance& c) {
  validate(c);
  detail::ByteWriter w;
  w.raw(std::string_view(kFormatMagic, 4));
  w.u16(kFormatVersion);
  w.u32(c.k);
  w.u32(static_cast<std::uint32_t>(c.x_count()));
  w.u32(c.eps_bits);
  w.u64(c.seed);
  w.u32(c.n);
  w.u32(c.m);
  w.magnitude(c.rep.prime().p);
  for (const auto& l : c.literal_labels) w.blob(l);
  for (const auto& e : c.rep.matrix.entries()) w.magnitude(e);
  w.u32(detail::crc32_of(w.bytes()));
  return std::move(w.bytes());
}

inline CompressedInstance deserialize(std::string_view bytes) {
  detail::ByteReader r(bytes);
  if (r.raw(4, "magic") != std::string_view(kFormatMagic, 4)) throw FormatError("bad magic");
  if (r.le(2, "version") != kFormatVersion) throw FormatError("unsupported format version");
  CompressedInstance c;
  c.k = static_cast<std::uint32_t>(r.le(4, "k"));
  const auto x_count = static_cast<std::size_t>(r.le(4, "|X|"));
  c.eps_bits = static_cast<std::uint32_t>(r.le(4, "eps"));
  c.seed = r.le(8, "seed");
  c.n = static_cast<std::uint32_t>(r.le(4, "n"));
  c.m = static_cast<std::uint32_t>(r.le(4, "m"));
  mpz_class p = r.magnitude("prime");

  // Each label and entry costs at least its 4-byte prefix.
  const std::size_t t = 2 * x_count;
  if (x_count > (1u << 16) || r.remaining() / 4 < t + t * 2 * t)
    throw FormatError("truncated input: too short for |X| = " + std::to_string(x_count));
  for (std::size_t i = 0; i < t; ++i) c.literal_labels.emplace_back(r.blob("label"));

  std::vector<mpz_class> entries;
  entries.reserve(t * 2 * t);
  for (std::size_t i = 0; i < t * 2 * t; ++i) entries.push_back(r.magnitude("matrix entry"));

  const std::size_t payload_end = r.position();
  const auto stored_crc = static_cast<std::uint32_t>(r.le(4, "checksum"));
  if (r.remaining() != 0) throw FormatError("trailing bytes after checksum");
  if (stored_crc != detail::crc32_of(bytes.substr(0, payload_end)))
    throw FormatError("checksum mismatch");

  if (p < 3) throw FormatError("modulus below 3");
  Rng rng(0x5eed);
  if (!is_probable_prime(p, 40, rng)) throw FormatError("modulus is not prime");
  for (const auto& e : entries)
    if (e >= p) throw FormatError("matrix entry not below p");

  std::vector<Label> labels(2 * t);
  for (Label i = 0; i < 2 * t; ++i) labels[i] = i;
  c.rep = GammoidRep{FpMatrix(Prime{p}, t, std::move(labels), std::move(entries)), c.eps_bits + 1};
  validate(c);
  return c;
}

// ---------------------------------------------------------------------------
// Size audit

struct SizeAudit {
  std::size_t serialized_bits = 0;
  std::size_t prime_bits = 0;
  std::size_t max_entry_bits = 0;
  std::size_t entry_bound_bits = 0;
  std::size_t total_bound_bits = 0;

  bool entries_ok() const { return prime_bits <= entry_bound_bits && max_entry_bits <= entry_bound_bits; }
  bool total_ok() const { return serialized_bits <= total_bound_bits; }
  bool passed() const { return entries_ok() && total_ok(); }
};

/// Upper bound on the vertex count of the terminal digraph built from a
/// graph with n vertices and bipartization set X: G' has at most
/// n + |X| + |X|(|X| - 1) vertices and D adds 2|X| shadows.
constexpr std::uint64_t terminal_digraph_vertex_bound(std::uint64_t n, std::uint64_t x) {
  return n + x * x + 2 * x;
}

/// Per-entry bound: entry_bit_bound for 2|X| sources, 4|X| columns, the
/// representation's half budget and the terminal-digraph vertex bound.
/// Whole-file bound: C * s^2 * (s + eps_bits + ceil(log2 n)) with
/// s = max(1, |X|), which also covers the fixed header.
inline SizeAudit size_audit(const CompressedInstance& c) {
  SizeAudit a;
  a.serialized_bits = 8 * serialize(c).size();
  a.prime_bits = c.rep.prime().bits();
  for (const auto& e : c.rep.matrix.entries()) a.max_entry_bits = std::max(a.max_entry_bits, bit_length(e));
  const std::uint64_t x = c.x_count();
  a.entry_bound_bits = entry_bit_bound(2 * x, 4 * x, std::uint64_t{c.eps_bits} + 1,
                                       terminal_digraph_vertex_bound(c.n, x));
  const std::uint64_t s = std::max<std::uint64_t>(1, x);
  a.total_bound_bits = kSerializedSizeConstant * s * s *
                       (s + c.eps_bits + ceil_log2(std::max<std::uint64_t>(c.n, 2)));
  return a;
}

/// Human-readable summary; never parsed back.
inline std::string summary(const CompressedInstance& c) {
  std::ostringstream out;
  SizeAudit a = size_audit(c);
  out << "compressed instance: k=" << c.k << " |X|=" << c.x_count() << " literals=" << 2 * c.x_count()
      << " matrix=" << c.rep.matrix.rows() << "x" << c.rep.matrix.cols() << '\n';
  out << "epsilon=2^-" << c.eps_bits << " seed=" << c.seed << " source n=" << c.n << " m=" << c.m << '\n';
  out << "prime bits=" << a.prime_bits << " max entry bits=" << a.max_entry_bits
      << " entry bound=" << a.entry_bound_bits << '\n';
  out << "serialized bits=" << a.serialized_bits << " bound=" << a.total_bound_bits << '\n';
  out << "audit " << (a.passed() ? "PASS" : "FAIL") << '\n';
  return out.str();
}

}  // namespace octk
