#include <algorithm>
#include <ostream>

#include "cgtk/fp.hpp"

namespace cgtk {

std::uint32_t CosetTable::image(std::size_t c, std::size_t g, bool inverse) const {
  if (!closed) throw PreconditionError("coset table is not closed");
  if (c >= rows_ || g >= ngens) throw PreconditionError("coset or generator out of range");
  return data_[c * 2 * ngens + 2 * g + (inverse ? 1 : 0)];
}

void CosetTable::write(std::ostream& out) const {
  if (!closed) throw PreconditionError("coset table is not closed");
  out << "PERM " << rows_ << ' ' << ngens << '\n';
  for (std::size_t g = 0; g < ngens; ++g) {
    for (std::size_t c = 0; c < rows_; ++c) out << (c ? " " : "") << data_[c * 2 * ngens + 2 * g] + 1;
    out << '\n';
  }
}

namespace {

using Letters = std::vector<int>;  // columns: 2g for g, 2g+1 for g^-1

Letters to_columns(const GenWord& w) {
  Letters out;
  for (auto [g, s] : w.letters()) out.push_back(static_cast<int>(2 * g + (s < 0 ? 1 : 0)));
  return out;
}

Letters cyclically_reduce(Letters r) {
  // Free reduction first; words from GenWord are already freely reduced.
  std::size_t b = 0, e = r.size();
  while (e - b >= 2 && r[b] == (r[e - 1] ^ 1)) {
    ++b;
    --e;
  }
  return Letters(r.begin() + static_cast<std::ptrdiff_t>(b), r.begin() + static_cast<std::ptrdiff_t>(e));
}

Letters invert(const Letters& r) {
  Letters out(r.rbegin(), r.rend());
  for (auto& x : out) x ^= 1;
  return out;
}

}  // namespace

class ToddCoxeter {
 public:
  using C = std::uint32_t;

  ToddCoxeter(const Presentation& pres, const std::vector<GenWord>& sub, const TcOptions& opt)
      : opt_(opt), ngens_(pres.gens.size()), w_(2 * pres.gens.size()) {
    if (opt.max_cosets == 0) throw PreconditionError("coset cap must be positive");
    if (opt.max_cosets >= 0xFFFFFFF0u) throw PreconditionError("coset cap too large");
    for (const auto& r : pres.relators) {
      if (!r.empty() && r.max_generator() >= ngens_) throw PreconditionError("relator uses undeclared generator");
      Letters l = cyclically_reduce(to_columns(r));
      if (!l.empty()) rels_.push_back(std::move(l));
    }
    for (const auto& s : sub) {
      if (!s.empty() && s.max_generator() >= ngens_) throw PreconditionError("subgroup word uses undeclared generator");
      Letters l = to_columns(s);
      if (!l.empty()) sub_.push_back(std::move(l));
    }
    conj_.assign(w_, {});
    for (const auto& r : rels_) {
      for (const Letters& base : {r, invert(r)}) {
        for (std::size_t k = 0; k < base.size(); ++k) {
          Letters c(base.begin() + static_cast<std::ptrdiff_t>(k), base.end());
          c.insert(c.end(), base.begin(), base.begin() + static_cast<std::ptrdiff_t>(k));
          auto& bucket = conj_[c[0]];
          if (std::find(bucket.begin(), bucket.end(), c) == bucket.end()) bucket.push_back(std::move(c));
        }
      }
    }
    felsch_ = opt.strategy == TcStrategy::Felsch;
    // Coset 1 is the subgroup.
    ensure_capacity(1);
    nrows_ = 1;
    p_[1] = 1;
    next_[1] = 0;
    prev_[1] = 0;
    last_ = 1;
    active_ = 1;
    stats_defined_ = 1;
    max_active_ = 1;
  }

  CosetTable run() {
    bool ok = felsch_ ? run_felsch() : run_hlt();
    CosetTable t;
    t.ngens = ngens_;
    t.defined = stats_defined_;
    t.killed = stats_killed_;
    t.max_active = max_active_;
    t.active = active_;
    if (!ok) return t;
    verify_complete();
    standardize(t);
    t.closed = true;
    return t;
  }

 private:
  C& T(C c, int x) { return t_[static_cast<std::size_t>(c) * w_ + static_cast<std::size_t>(x)]; }
  bool alive(C c) const { return p_[c] == c; }

  void ensure_capacity(std::size_t rows) {
    std::size_t need = rows + 1;
    if (p_.size() >= need) return;
    std::size_t cap = std::max<std::size_t>(need, std::min(opt_.max_cosets + 1, p_.size() * 2 + 64));
    t_.resize(cap * w_, 0);
    p_.resize(cap, 0);
    next_.resize(cap, 0);
    prev_.resize(cap, 0);
  }

  bool room() const { return nrows_ < opt_.max_cosets; }

  // Precondition: room().
  C define(C a, int x) {
    C n = ++nrows_;
    ensure_capacity(n);
    std::fill(t_.begin() + static_cast<std::ptrdiff_t>(n * w_), t_.begin() + static_cast<std::ptrdiff_t>((n + 1) * w_), 0);
    p_[n] = n;
    next_[n] = 0;
    prev_[n] = last_;
    next_[last_] = n;
    last_ = n;
    ++active_;
    ++stats_defined_;
    ++since_compact_;
    max_active_ = std::max(max_active_, active_);
    T(a, x) = n;
    T(n, x ^ 1) = a;
    if (felsch_) deductions_.push_back({a, x});
    return n;
  }

  C rep(C k) {
    C l = k;
    while (p_[l] != l) l = p_[l];
    while (p_[k] != l) {
      C nx = p_[k];
      p_[k] = l;
      k = nx;
    }
    return l;
  }

  void merge(C k, C l, std::vector<C>& q) {
    C a = rep(k), b = rep(l);
    if (a == b) return;
    C mu = std::min(a, b), nu = std::max(a, b);
    p_[nu] = mu;
    // Unlink nu from the active list; its own next_ stays for walkers.
    next_[prev_[nu]] = next_[nu];
    if (next_[nu])
      prev_[next_[nu]] = prev_[nu];
    else
      last_ = prev_[nu];
    --active_;
    ++stats_killed_;
    q.push_back(nu);
  }

  void coincidence(C a, C b) {
    std::vector<C> q;
    merge(a, b, q);
    for (std::size_t i = 0; i < q.size(); ++i) {
      C g = q[i];
      for (int x = 0; x < static_cast<int>(w_); ++x) {
        C d = T(g, x);
        if (!d) continue;
        T(d, x ^ 1) = 0;
        C mu = rep(g), nu = rep(d);
        if (T(mu, x))
          merge(nu, T(mu, x), q);
        else if (T(nu, x ^ 1))
          merge(mu, T(nu, x ^ 1), q);
        else {
          T(mu, x) = nu;
          T(nu, x ^ 1) = mu;
          if (felsch_) deductions_.push_back({mu, x});
        }
      }
    }
  }

  // Returns false only when a definition was needed but the table is full.
  bool scan_and_fill(C a, const Letters& w) {
    const int n = static_cast<int>(w.size());
    C f = a, b = a;
    int i = 0, j = n - 1;
    for (;;) {
      while (i <= j && T(f, w[i])) f = T(f, w[i++]);
      if (i > j) {
        if (f != a) coincidence(f, a);
        return true;
      }
      while (j >= i && T(b, w[j] ^ 1)) b = T(b, w[j--] ^ 1);
      if (j < i) {
        coincidence(f, b);
        return true;
      }
      if (i == j) {
        T(f, w[i]) = b;
        T(b, w[i] ^ 1) = f;
        if (felsch_) deductions_.push_back({f, w[i]});
        return true;
      }
      if (!room()) return false;
      define(f, w[i]);
    }
  }

  void scan(C a, const Letters& w) {
    const int n = static_cast<int>(w.size());
    C f = a, b = a;
    int i = 0, j = n - 1;
    while (i <= j && T(f, w[i])) f = T(f, w[i++]);
    if (i > j) {
      if (f != a) coincidence(f, a);
      return;
    }
    while (j >= i && T(b, w[j] ^ 1)) b = T(b, w[j--] ^ 1);
    if (j < i) {
      coincidence(f, b);
    } else if (i == j) {
      T(f, w[i]) = b;
      T(b, w[i] ^ 1) = f;
      if (felsch_) deductions_.push_back({f, w[i]});
    }
  }

  C next_alive(C c) const {
    while (c && p_[c] != c) c = next_[c];
    return c;
  }

  void lookahead() {
    C c = 1;
    while (c) {
      for (const auto& r : rels_) {
        if (!alive(c)) break;
        scan(c, r);
      }
      c = alive(c) ? next_alive(next_[c]) : next_alive(c);
    }
  }

  // Renumbers live cosets 1..active in list order; returns the new id of
  // `keep` (which must be alive or 0).
  C compact(C keep) {
    std::vector<C> newid(nrows_ + 1, 0);
    C k = 0;
    for (C c = 1; c; c = next_[c]) newid[c] = ++k;
    std::vector<C> nt((static_cast<std::size_t>(k) + 1) * w_, 0);
    for (C c = 1; c; c = next_[c])
      for (std::size_t x = 0; x < w_; ++x) {
        C d = t_[static_cast<std::size_t>(c) * w_ + x];
        nt[static_cast<std::size_t>(newid[c]) * w_ + x] = d ? newid[rep(d)] : 0;
      }
    for (auto& [c, x] : deductions_) c = alive(c) ? newid[c] : 0;
    deductions_.erase(std::remove_if(deductions_.begin(), deductions_.end(),
                                     [](const auto& d) { return d.first == 0; }),
                      deductions_.end());
    C nk = keep ? newid[keep] : 0;
    nt.resize(t_.size(), 0);
    t_.swap(nt);
    for (C c = 1; c <= k; ++c) {
      p_[c] = c;
      next_[c] = c < k ? c + 1 : 0;
      prev_[c] = c - 1;
    }
    nrows_ = k;
    last_ = k;
    since_compact_ = 0;
    return nk;
  }

  bool run_hlt() {
    for (;;) {
      bool ok = true;
      for (const auto& w : sub_)
        if (!(ok = scan_and_fill(1, w))) break;
      if (ok) break;
      lookahead();
      compact(0);
      if (!room()) return false;
    }
    C a = 1;
    while (a) {
      bool need_room = false;
      for (const auto& r : rels_) {
        if (!alive(a)) break;
        if (!scan_and_fill(a, r)) {
          need_room = true;
          break;
        }
      }
      if (!need_room && alive(a)) {
        for (int x = 0; x < static_cast<int>(w_); ++x) {
          if (T(a, x)) continue;
          if (!room()) {
            need_room = true;
            break;
          }
          define(a, x);
        }
      }
      if (need_room || since_compact_ >= opt_.compact_every) {
        lookahead();
        a = next_alive(a);
        if (!a) break;
        a = compact(a);
        if (need_room) {
          if (!room()) return false;
          continue;  // redo this coset
        }
      }
      a = next_alive(a) == a ? next_alive(next_[a]) : next_alive(a);
    }
    return true;
  }

  void process_deductions() {
    while (!deductions_.empty()) {
      auto [c, x] = deductions_.back();
      deductions_.pop_back();
      if (!alive(c)) continue;
      for (const auto& r : conj_[x]) {
        if (!alive(c)) break;
        scan(c, r);
      }
      if (!alive(c)) continue;
      C d = T(c, x);
      if (!d) continue;
      for (const auto& r : conj_[x ^ 1]) {
        if (!alive(d)) break;
        scan(d, r);
      }
    }
  }

  bool run_felsch() {
    for (;;) {
      bool ok = true;
      for (const auto& w : sub_)
        if (!(ok = scan_and_fill(1, w))) break;
      process_deductions();
      if (ok) break;
      compact(0);
      if (!room()) return false;
    }
    C a = 1;
    for (;;) {
      process_deductions();
      for (const auto& w : sub_) scan(1, w);
      if (!deductions_.empty()) continue;
      a = next_alive(a);
      int x = 0;
      while (a) {
        while (x < static_cast<int>(w_) && T(a, x)) ++x;
        if (x < static_cast<int>(w_)) break;
        a = next_alive(next_[a]);
        x = 0;
      }
      if (!a) {
        // Coincidences can reopen rows behind the cursor; re-check once.
        a = first_incomplete();
        if (!a) return true;
        while (T(a, x)) ++x;
      }
      if (!room()) {
        a = compact(a);
        if (!room()) return false;
      }
      define(a, x);
    }
  }

  C first_incomplete() {
    for (C c = 1; c; c = next_[c])
      for (std::size_t x = 0; x < w_; ++x)
        if (!T(c, static_cast<int>(x))) return c;
    return 0;
  }

  C trace(C c, const Letters& w) {
    for (int x : w) {
      c = T(c, x);
      if (!c) return 0;
    }
    return c;
  }

  void verify_complete() {
    for (C c = 1; c; c = next_[c]) {
      for (std::size_t x = 0; x < w_; ++x)
        if (!T(c, static_cast<int>(x)) || !alive(T(c, static_cast<int>(x))))
          throw Error("internal: coset table incomplete after enumeration");
      for (const auto& r : rels_)
        if (trace(c, r) != c) throw Error("internal: relator fails in closed coset table");
    }
    for (const auto& w : sub_)
      if (trace(1, w) != 1) throw Error("internal: subgroup generator does not fix coset 1");
  }

  void standardize(CosetTable& t) {
    std::vector<C> newid(nrows_ + 1, 0), order{1};
    newid[1] = 1;
    for (std::size_t i = 0; i < order.size(); ++i)
      for (std::size_t x = 0; x < w_; ++x) {
        C d = T(order[i], static_cast<int>(x));
        if (!newid[d]) {
          newid[d] = static_cast<C>(order.size() + 1);
          order.push_back(d);
        }
      }
    t.rows_ = order.size();
    t.data_.assign(order.size() * w_, 0);
    for (std::size_t i = 0; i < order.size(); ++i)
      for (std::size_t x = 0; x < w_; ++x)
        t.data_[i * w_ + x] = newid[T(order[i], static_cast<int>(x))] - 1;
    t.active = order.size();
  }

  TcOptions opt_;
  std::size_t ngens_, w_;
  bool felsch_ = false;
  std::vector<Letters> rels_, sub_;
  std::vector<std::vector<Letters>> conj_;
  std::vector<C> t_, p_, next_, prev_;
  C nrows_ = 0, last_ = 0;
  std::size_t active_ = 0, max_active_ = 0, stats_defined_ = 0, stats_killed_ = 0, since_compact_ = 0;
  std::vector<std::pair<C, int>> deductions_;
};

CosetTable todd_coxeter(const Presentation& pres, const std::vector<GenWord>& subgroup,
                        const TcOptions& opt) {
  const auto& sub = subgroup.empty() ? pres.subgroup : subgroup;
  return ToddCoxeter(pres, sub, opt).run();
}

std::vector<Permutation> coset_action(const CosetTable& table, const Presentation& pres) {
  if (!table.closed) throw PreconditionError("coset table is not closed");
  if (table.ngens != pres.gens.size()) throw PreconditionError("table and presentation disagree on generators");
  std::vector<Permutation> out;
  for (std::size_t g = 0; g < table.ngens; ++g) {
    std::vector<Point> img(table.index());
    for (std::size_t c = 0; c < img.size(); ++c) img[c] = table.image(c, g);
    out.emplace_back(std::move(img));
  }
  std::vector<GroupElement> els(out.begin(), out.end());
  auto rep = verify_relations(pres, els);
  if (!rep.pass) throw Error("coset action fails a relator");
  return out;
}

}  // namespace cgtk
