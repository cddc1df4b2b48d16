#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "pda/core.hpp"

// Runs the coded caching scheme an array describes over real bytes.
//
// Placement: user j stores packet i of every file iff cell (i,j) is a star.
// Delivery: for each code s the server broadcasts the XOR, over all cells
// (i,j) holding s, of packet i of the file user j asked for.
// Decoding: user j takes the signal for the code at (i,j) and cancels the
// other terms with packets from its own cache.
//
// The functions take raw grids so that broken arrays can be run too; with a
// valid array decoding always succeeds.

namespace pda {

using Packet = std::vector<std::uint8_t>;

inline void xor_into(Packet& acc, const Packet& p) {
  for (std::size_t b = 0; b < acc.size(); ++b) acc[b] ^= p[b];
}

struct FileStore {
  std::int64_t num_files = 0;
  std::int64_t packets_per_file = 0;
  std::size_t packet_bytes = 0;
  std::vector<Packet> packets;  // file n, packet i at n * packets_per_file + i

  const Packet& packet(std::int64_t file, std::int64_t i) const {
    return packets[static_cast<std::size_t>(file * packets_per_file + i)];
  }

  Packet file_bytes(std::int64_t file) const {
    Packet out;
    for (std::int64_t i = 0; i < packets_per_file; ++i) {
      const Packet& p = packet(file, i);
      out.insert(out.end(), p.begin(), p.end());
    }
    return out;
  }

  static FileStore random(std::int64_t num_files, std::int64_t packets_per_file, std::size_t packet_bytes,
                          std::uint64_t seed) {
    if (num_files < 1) throw PreconditionError("need at least one file");
    if (packets_per_file < 1) throw PreconditionError("files need at least one packet");
    if (packet_bytes < 1) throw PreconditionError("packets need at least one byte");
    FileStore s{num_files, packets_per_file, packet_bytes, {}};
    std::mt19937_64 rng(seed);
    s.packets.resize(static_cast<std::size_t>(num_files * packets_per_file));
    for (Packet& p : s.packets) {
      p.resize(packet_bytes);
      for (auto& b : p) b = static_cast<std::uint8_t>(rng() & 0xff);
    }
    return s;
  }
};

struct CacheState {
  std::int64_t user = 0;
  std::map<std::pair<std::int64_t, std::int64_t>, Packet> packets;  // (file, packet index)

  const Packet* find(std::int64_t file, std::int64_t i) const {
    auto it = packets.find({file, i});
    return it == packets.end() ? nullptr : &it->second;
  }

  friend bool operator==(const CacheState&, const CacheState&) = default;
};

struct Signal {
  std::uint32_t code = 0;
  Packet payload;
};

inline std::vector<CacheState> placement(const Grid& g, const FileStore& store) {
  if (static_cast<std::int64_t>(g.rows()) != store.packets_per_file)
    throw PreconditionError("array has " + std::to_string(g.rows()) + " rows but files have " +
                            std::to_string(store.packets_per_file) + " packets");
  std::vector<CacheState> caches(g.cols());
  for (std::size_t j = 0; j < g.cols(); ++j) {
    caches[j].user = static_cast<std::int64_t>(j);
    for (std::size_t i = 0; i < g.rows(); ++i) {
      if (!g.at(i, j).is_star()) continue;
      for (std::int64_t n = 0; n < store.num_files; ++n)
        caches[j].packets.emplace(std::pair{n, static_cast<std::int64_t>(i)}, store.packet(n, static_cast<std::int64_t>(i)));
    }
  }
  return caches;
}

inline std::vector<CacheState> placement(const Pda& p, const FileStore& store) { return placement(p.grid(), store); }

namespace detail {

inline void check_demands(const Grid& g, const FileStore& store, const std::vector<std::int64_t>& demands) {
  if (demands.size() != g.cols())
    throw PreconditionError("demand vector has " + std::to_string(demands.size()) + " entries, expected " +
                            std::to_string(g.cols()));
  for (std::size_t j = 0; j < demands.size(); ++j)
    if (demands[j] < 0 || demands[j] >= store.num_files)
      throw PreconditionError("user " + std::to_string(j) + " demands file " + std::to_string(demands[j]) +
                              ", outside [0," + std::to_string(store.num_files) + ")");
}

}  // namespace detail

/// One signal per distinct code, in ascending code order.
inline std::vector<Signal> delivery(const Grid& g, const FileStore& store, const std::vector<std::int64_t>& demands) {
  detail::check_demands(g, store, demands);
  std::vector<Signal> out;
  for (const auto& [code, cells] : g.occurrences()) {
    Signal sig{code, Packet(store.packet_bytes, 0)};
    for (const Cell& c : cells)
      xor_into(sig.payload, store.packet(demands[c.col], static_cast<std::int64_t>(c.row)));
    out.push_back(std::move(sig));
  }
  return out;
}

inline std::vector<Signal> delivery(const Pda& p, const FileStore& store, const std::vector<std::int64_t>& demands) {
  return delivery(p.grid(), store, demands);
}

namespace detail {

inline Packet decode_with(const Grid& g, const std::map<std::uint32_t, std::vector<Cell>>& occ, std::int64_t user,
                          const CacheState& cache, const std::map<std::uint32_t, const Signal*>& by_code,
                          const std::vector<std::int64_t>& demands) {
  const auto j = static_cast<std::size_t>(user);
  const std::int64_t want = demands[j];
  Packet out;
  for (std::size_t i = 0; i < g.rows(); ++i) {
    const Entry e = g.at(i, j);
    if (e.is_star()) {
      const Packet* p = cache.find(want, static_cast<std::int64_t>(i));
      if (!p) throw DecodeError("user " + std::to_string(user) + " is missing cached packet " + std::to_string(i));
      out.insert(out.end(), p->begin(), p->end());
      continue;
    }
    auto sig = by_code.find(e.value());
    if (sig == by_code.end()) throw DecodeError("no signal for code " + std::to_string(e.value()));
    Packet p = sig->second->payload;
    for (const Cell& c : occ.at(e.value())) {
      if (c.row == i && c.col == j) continue;
      const Packet* side = cache.find(demands[c.col], static_cast<std::int64_t>(c.row));
      if (!side)
        throw DecodeError("user " + std::to_string(user) + " cannot cancel packet " + std::to_string(c.row) +
                          " of file " + std::to_string(demands[c.col]) + " in signal " + std::to_string(e.value()));
      xor_into(p, *side);
    }
    out.insert(out.end(), p.begin(), p.end());
  }
  return out;
}

inline std::map<std::uint32_t, const Signal*> index_signals(const std::vector<Signal>& signals) {
  std::map<std::uint32_t, const Signal*> by_code;
  for (const Signal& s : signals) by_code[s.code] = &s;
  return by_code;
}

}  // namespace detail

/// Rebuilds the file user `user` demanded. Throws DecodeError when a needed
/// packet is neither cached nor recoverable.
inline Packet decode(const Grid& g, std::int64_t user, const CacheState& cache, const std::vector<Signal>& signals,
                     const std::vector<std::int64_t>& demands) {
  if (user < 0 || static_cast<std::size_t>(user) >= g.cols()) throw PreconditionError("no such user");
  if (demands.size() != g.cols()) throw PreconditionError("demand vector length mismatch");
  return detail::decode_with(g, g.occurrences(), user, cache, detail::index_signals(signals), demands);
}

inline Packet decode(const Pda& p, std::int64_t user, const CacheState& cache, const std::vector<Signal>& signals,
                     const std::vector<std::int64_t>& demands) {
  return decode(p.grid(), user, cache, signals, demands);
}

struct DemandMode {
  // nullopt: every one of N^K demand vectors
  std::optional<std::int64_t> samples;
  std::uint64_t seed = 0;

  static DemandMode all() { return {}; }
  static DemandMode sample(std::int64_t n, std::uint64_t seed) { return {n, seed}; }
};

struct SimReport {
  Params params;
  std::int64_t num_files = 0;
  std::size_t packet_bytes = 0;
  std::string demand_mode;
  std::uint64_t seed = 0;
  std::int64_t demands_run = 0;
  std::int64_t decode_successes = 0;  // counted per demand vector: every user decoded
  std::int64_t user_failures = 0;
  std::int64_t load_packets = 0;      // largest number of signals over all demand vectors
  std::int64_t min_load_packets = 0;
  std::uint64_t bytes_sent_max = 0;
  std::int64_t baseline_packets = 0;  // uncoded delivery, K(F - Z) packets
  Rational rate;                      // load / F
  Rational gain;                      // load / baseline
  std::string first_failure;

  bool all_decoded() const { return decode_successes == demands_run && user_failures == 0; }

  std::string to_text() const {
    std::ostringstream os;
    os << "K=" << params.k << "\nF=" << params.f << "\nZ=" << params.z << "\nS=" << params.s << "\nfiles=" << num_files
       << "\npacket_bytes=" << packet_bytes << "\ndemand_mode=" << demand_mode << "\nseed=" << seed
       << "\ndemands_run=" << demands_run << "\ndecode_successes=" << decode_successes
       << "\nuser_failures=" << user_failures << "\nload_packets=" << load_packets
       << "\nbytes_sent_max=" << bytes_sent_max << "\nbaseline_packets=" << baseline_packets
       << "\nrate=" << rate.str() << "\nload_over_baseline=" << gain.str() << "\n";
    return os.str();
  }
};

/// Placement once, then delivery and decoding for each demand vector.
inline SimReport simulate(const Grid& g, std::int64_t num_files, const DemandMode& mode, std::size_t packet_bytes = 64,
                          std::uint64_t file_seed = 0) {
  const auto k = static_cast<std::int64_t>(g.cols());
  const auto f = static_cast<std::int64_t>(g.rows());
  const FileStore store = FileStore::random(num_files, f, packet_bytes, file_seed);
  const std::vector<CacheState> caches = placement(g, store);
  const auto occ = g.occurrences();

  SimReport rep;
  rep.params = {k, f, static_cast<std::int64_t>(g.stars_in_column(0)), static_cast<std::int64_t>(g.codes().size())};
  rep.num_files = num_files;
  rep.packet_bytes = packet_bytes;
  rep.seed = mode.seed;
  std::int64_t coded_cells = 0;
  for (std::size_t j = 0; j < g.cols(); ++j) coded_cells += f - static_cast<std::int64_t>(g.stars_in_column(j));
  rep.baseline_packets = coded_cells;
  rep.min_load_packets = -1;

  std::vector<std::vector<std::int64_t>> demand_list;
  if (!mode.samples) {
    rep.demand_mode = "all";
    std::uint64_t total = 1;
    for (std::int64_t j = 0; j < k; ++j) {
      total *= static_cast<std::uint64_t>(num_files);
      if (total > 1'000'000) throw PreconditionError("N^K exceeds 1000000 demand vectors; sample instead");
    }
    std::vector<std::int64_t> d(static_cast<std::size_t>(k), 0);
    for (std::uint64_t n = 0; n < total; ++n) {
      demand_list.push_back(d);
      for (std::size_t j = 0; j < d.size(); ++j) {
        if (++d[j] < num_files) break;
        d[j] = 0;
      }
    }
  } else {
    rep.demand_mode = "sample:" + std::to_string(*mode.samples);
    std::mt19937_64 rng(mode.seed);
    std::uniform_int_distribution<std::int64_t> pick(0, num_files - 1);
    for (std::int64_t n = 0; n < *mode.samples; ++n) {
      std::vector<std::int64_t> d(static_cast<std::size_t>(k));
      for (auto& x : d) x = pick(rng);
      demand_list.push_back(std::move(d));
    }
  }

  for (const auto& d : demand_list) {
    const std::vector<Signal> signals = delivery(g, store, d);
    const auto load = static_cast<std::int64_t>(signals.size());
    rep.load_packets = std::max(rep.load_packets, load);
    rep.min_load_packets = rep.min_load_packets < 0 ? load : std::min(rep.min_load_packets, load);
    std::uint64_t bytes = 0;
    for (const Signal& s : signals) bytes += s.payload.size();
    rep.bytes_sent_max = std::max(rep.bytes_sent_max, bytes);

    const auto by_code = detail::index_signals(signals);
    bool ok = true;
    for (std::int64_t j = 0; j < k; ++j) {
      try {
        if (detail::decode_with(g, occ, j, caches[static_cast<std::size_t>(j)], by_code, d) !=
            store.file_bytes(d[static_cast<std::size_t>(j)]))
          throw DecodeError("user " + std::to_string(j) + " decoded wrong bytes");
      } catch (const DecodeError& e) {
        ok = false;
        ++rep.user_failures;
        if (rep.first_failure.empty()) rep.first_failure = e.what();
      }
    }
    ++rep.demands_run;
    if (ok) ++rep.decode_successes;
  }
  if (rep.min_load_packets < 0) rep.min_load_packets = 0;
  rep.rate = Rational::of(rep.load_packets, f);
  rep.gain = rep.baseline_packets ? Rational::of(rep.load_packets, rep.baseline_packets) : Rational{0, 1};
  return rep;
}

inline SimReport simulate(const Pda& p, std::int64_t num_files, const DemandMode& mode, std::size_t packet_bytes = 64,
                          std::uint64_t file_seed = 0) {
  return simulate(p.grid(), num_files, mode, packet_bytes, file_seed);
}

}  // namespace pda
