#include "mfspin/partitions.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <stdexcept>

namespace mfspin {

Partition Partition::of(std::vector<int> p) {
    Partition out;
    int sum = 0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (p[i] < 0) throw std::domain_error("Partition: negative part");
        if (i + 1 < p.size() && p[i] < p[i + 1])
            throw std::domain_error("Partition: parts must be weakly decreasing");
        sum += p[i];
    }
    out.parts = std::move(p);
    out.n = sum;
    return out;
}

Partition Partition::sorted_from(std::vector<int> entries) {
    std::sort(entries.begin(), entries.end(), std::greater<int>());
    return Partition::of(std::move(entries));
}

int Partition::nonzero_parts() const {
    int k = 0;
    for (int v : parts)
        if (v > 0) ++k;
    return k;
}

std::string Partition::to_string() const {
    std::string s;
    for (int v : parts) {
        if (v == 0) break;
        if (!s.empty()) s += '+';
        s += std::to_string(v);
    }
    return s.empty() ? "0" : s;
}

Composition Composition::of(std::vector<int> e) {
    Composition out;
    int sum = 0;
    for (int v : e) {
        if (v < 0) throw std::domain_error("Composition: negative entry");
        sum += v;
    }
    out.entries = std::move(e);
    out.n = sum;
    return out;
}

BigCount BigCount::from_bigint(BigInt v) {
    if (v.is_negative()) throw std::domain_error("BigCount: negative value");
    BigCount out;
    out.log_value = v.log_abs();
    out.exact = std::move(v);
    return out;
}

BigCount BigCount::zero() { return from_bigint(BigInt(0)); }

namespace {

void enumerate_rec(int remaining, int slot, int max_part, std::vector<int>& buf,
                   const std::function<void(const std::vector<int>&)>& fn) {
    const int theta = static_cast<int>(buf.size());
    if (remaining == 0) {
        for (int j = slot; j < theta; ++j) buf[j] = 0;
        fn(buf);
        return;
    }
    if (slot == theta) return;
    int slots_left = theta - slot;
    // largest feasible next part; parts after this one can carry at most
    // (slots_left-1)*part, so part >= ceil(remaining/slots_left)
    int lo = (remaining + slots_left - 1) / slots_left;
    int hi = std::min(max_part, remaining);
    for (int part = hi; part >= lo; --part) {
        buf[slot] = part;
        enumerate_rec(remaining - part, slot + 1, part, buf, fn);
    }
}

}  // namespace

void for_each_partition(int n, int theta,
                        const std::function<void(const std::vector<int>&)>& fn) {
    if (n < 1) throw std::domain_error("enumerate_partitions: n must be >= 1");
    if (theta < 2) throw std::domain_error("enumerate_partitions: theta must be >= 2");
    std::vector<int> buf(theta, 0);
    enumerate_rec(n, 0, n, buf, fn);
}

std::vector<Partition> enumerate_partitions(int n, int theta) {
    std::vector<Partition> out;
    for_each_partition(n, theta, [&](const std::vector<int>& p) {
        Partition q;
        q.parts = p;
        q.n = n;
        out.push_back(std::move(q));
    });
    return out;
}

BigCount rearrangement_count(const Partition& lambda) {
    BigInt r = BigInt::factorial(lambda.theta());
    int run = 1;
    for (int j = 1; j <= lambda.theta(); ++j) {
        if (j < lambda.theta() && lambda.parts[j] == lambda.parts[j - 1]) {
            ++run;
        } else {
            r = r.divide_exact(BigInt::factorial(run));
            run = 1;
        }
    }
    return BigCount::from_bigint(std::move(r));
}

bool dominates(const Partition& mu, const Partition& lambda) {
    if (mu.n != lambda.n) throw std::domain_error("dominates: partitions of different n");
    if (mu.theta() != lambda.theta())
        throw std::domain_error("dominates: partitions of different theta");
    long long pm = 0, pl = 0;
    for (int i = 0; i < mu.theta(); ++i) {
        pm += mu.parts[i];
        pl += lambda.parts[i];
        if (pm < pl) return false;
    }
    return true;
}

namespace {

// Counts chains of horizontal strips building `shape` with strip sizes
// `content` (the standard SSYT recursion). CountT is BigInt or uint64_t.
template <typename CountT>
CountT kostka_strip_dp(const std::vector<int>& shape, const std::vector<int>& content) {
    const int rows = static_cast<int>(shape.size());
    // states: intermediate shapes (zero-padded to rows), weakly decreasing
    std::map<std::vector<int>, CountT> cur;
    cur[std::vector<int>(rows, 0)] = CountT(1);
    for (std::size_t v = 0; v < content.size(); ++v) {
        const int strip = content[v];
        std::map<std::vector<int>, CountT> next;
        for (const auto& [nu, cnt] : cur) {
            // add a horizontal strip of `strip` cells:
            // nu[i] <= nu'[i] <= min(shape[i], nu[i-1]); recursive row fill
            std::vector<int> grown = nu;
            std::function<void(int, int)> place = [&](int row, int remaining) {
                if (row == rows) {
                    if (remaining == 0) {
                        auto it = next.find(grown);
                        if (it == next.end())
                            next.emplace(grown, cnt);
                        else
                            it->second += cnt;
                    }
                    return;
                }
                int cap = shape[row];
                if (row > 0) cap = std::min(cap, nu[row - 1]);
                int max_add = cap - nu[row];
                if (max_add < 0) return;
                for (int add = 0; add <= std::min(max_add, remaining); ++add) {
                    grown[row] = nu[row] + add;
                    // cells remaining must fit in later rows; cheap prune
                    place(row + 1, remaining - add);
                }
                grown[row] = nu[row];
            };
            place(0, strip);
        }
        cur = std::move(next);
    }
    auto it = cur.find(shape);
    return it == cur.end() ? CountT(0) : it->second;
}

std::vector<int> trimmed(const std::vector<int>& v) {
    std::vector<int> out(v);
    while (!out.empty() && out.back() == 0) out.pop_back();
    return out;
}

}  // namespace

BigCount kostka(const Partition& mu, const Partition& lambda) {
    if (mu.n != lambda.n) throw std::domain_error("kostka: partitions of different n");
    std::vector<int> shape = trimmed(mu.parts);
    std::vector<int> content = trimmed(lambda.parts);
    // columns are strict, so shapes deeper than the number of values never fill
    if (shape.size() > content.size()) return BigCount::zero();
    return BigCount::from_bigint(kostka_strip_dp<BigInt>(shape, content));
}

namespace {

// packed-state strip DP: each row occupies 12 bits of the key, so shapes up
// to 8 rows and parts up to 4095 fit one uint64
constexpr int kRowBits = 12;
constexpr std::uint64_t kRowMask = (1u << kRowBits) - 1;

}  // namespace

std::uint64_t kostka_u64(const std::vector<int>& shape, const std::vector<int>& content) {
    std::vector<int> s = trimmed(shape);
    std::vector<int> c = trimmed(content);
    if (s.size() > c.size()) return 0;
    const int rows = static_cast<int>(s.size());
    if (rows == 0) return c.empty() ? 1 : 0;
    if (rows <= 3 && c.size() <= 3) {
        // interval count over the middle shape (a, b) of the strip chain
        // (c1) -> (a, b) -> (m1, m2, m3): a + b = c1 + c2 with
        // a >= c1, b <= c1, m1 >= a >= m2, m2 >= b >= m3
        long long m1 = s[0], m2 = rows > 1 ? s[1] : 0, m3 = rows > 2 ? s[2] : 0;
        long long c1 = c[0], c2 = c.size() > 1 ? c[1] : 0;
        long long lo = std::max({c1, m2, c1 + c2 - std::min(c1, m2)});
        long long hi = std::min(m1, c1 + c2 - m3);
        return hi >= lo ? static_cast<std::uint64_t>(hi - lo + 1) : 0;
    }
    if (rows > 5 || s[0] > static_cast<int>(kRowMask))
        return kostka_strip_dp<std::uint64_t>(s, c);

    using State = std::pair<std::uint64_t, std::uint64_t>;  // packed shape, count
    std::vector<State> cur{{0, 1}}, next;
    std::vector<int> nu(rows), grown(rows);
    for (int value = 0; value < static_cast<int>(c.size()); ++value) {
        const int strip = c[value];
        next.clear();
        for (const auto& [key, cnt] : cur) {
            for (int r = 0; r < rows; ++r) nu[r] = static_cast<int>((key >> (kRowBits * r)) & kRowMask);
            // rows reachable by value v: at most v+1 of them
            const int max_row = std::min(rows, value + 1);
            // enumerate horizontal strips of `strip` cells over nu
            std::function<void(int, int)> place = [&](int row, int remaining) {
                if (row == max_row || remaining == 0) {
                    if (remaining != 0) return;
                    std::uint64_t packed = 0;
                    for (int r = 0; r < rows; ++r) {
                        int val = r < row ? grown[r] : nu[r];
                        packed |= static_cast<std::uint64_t>(val) << (kRowBits * r);
                    }
                    next.emplace_back(packed, cnt);
                    return;
                }
                int cap = s[row];
                if (row > 0) cap = std::min(cap, nu[row - 1]);
                int max_add = cap - nu[row];
                if (max_add < 0) return;
                for (int add = 0; add <= std::min(max_add, remaining); ++add) {
                    grown[row] = nu[row] + add;
                    place(row + 1, remaining - add);
                }
            };
            place(0, strip);
        }
        std::sort(next.begin(), next.end(),
                  [](const State& a, const State& b) { return a.first < b.first; });
        cur.clear();
        for (const auto& st : next) {
            if (!cur.empty() && cur.back().first == st.first)
                cur.back().second += st.second;
            else
                cur.push_back(st);
        }
    }
    std::uint64_t target = 0;
    for (int r = 0; r < rows; ++r) target |= static_cast<std::uint64_t>(s[r]) << (kRowBits * r);
    for (const auto& st : cur)
        if (st.first == target) return st.second;
    return 0;
}

BigCount multinomial(const Partition& lambda) {
    BigInt r = BigInt::factorial(lambda.n);
    for (int v : lambda.parts) r = r.divide_exact(BigInt::factorial(v));
    return BigCount::from_bigint(std::move(r));
}

BigCount dimension(const Partition& mu) {
    const int k = mu.nonzero_parts();
    if (k == 0) throw std::domain_error("dimension: empty partition");
    std::vector<long long> m(k);
    for (int i = 0; i < k; ++i) m[i] = mu.parts[i] + k - (i + 1);
    BigInt num = BigInt::factorial(mu.n);
    for (int i = 0; i < k; ++i)
        for (int j = i + 1; j < k; ++j) num *= BigInt(m[i] - m[j]);
    for (int i = 0; i < k; ++i) num = num.divide_exact(BigInt::factorial(static_cast<int>(m[i])));
    return BigCount::from_bigint(std::move(num));
}

double energy_exponent(const Partition& mu, double beta) {
    return energy_exponent_raw(mu.parts, mu.n, beta);
}

double energy_exponent_raw(const std::vector<int>& mu_parts, int n, double beta) {
    double s = 0.0;
    for (std::size_t j = 0; j < mu_parts.size(); ++j) {
        double mj = mu_parts[j];
        s += mj * (mj - 2.0 * (static_cast<double>(j) + 1.0) + 1.0);
    }
    return 0.5 * beta * (s / n - (n - 1.0));
}

namespace {

// log k for small k, table-backed; the combinatorial hot loops spend most of
// their time here otherwise
double log_int(long long k) {
    static const std::vector<double> table = [] {
        std::vector<double> t(4097, 0.0);
        for (int i = 1; i < static_cast<int>(t.size()); ++i)
            t[i] = std::log(static_cast<double>(i));
        return t;
    }();
    if (k > 0 && k < static_cast<long long>(table.size())) return table[k];
    return std::log(static_cast<double>(k));
}

}  // namespace

double log_factorial(int k) {
    // exact cumulative products in 80-bit long double keep the table to
    // well under 1e-13 absolute out to the sizes the engines touch
    static const std::vector<double> table = [] {
        std::vector<double> t(100001);
        long double acc = 0.0L;
        t[0] = 0.0;
        for (int i = 1; i < static_cast<int>(t.size()); ++i) {
            acc += std::log(static_cast<long double>(i));
            t[i] = static_cast<double>(acc);
        }
        return t;
    }();
    if (k < 0) throw std::domain_error("log_factorial: negative argument");
    if (k < static_cast<int>(table.size())) return table[k];
    return std::lgamma(static_cast<double>(k) + 1.0);
}

double log_dimension(const std::vector<int>& mu_parts, int n) {
    int k = 0;
    for (int v : mu_parts)
        if (v > 0) ++k;
    if (k == 0) throw std::domain_error("log_dimension: empty partition");
    double r = log_factorial(n);
    std::vector<long long> m(k);
    for (int i = 0; i < k; ++i) m[i] = mu_parts[i] + k - (i + 1);
    for (int i = 0; i < k; ++i) {
        r -= log_factorial(static_cast<int>(m[i]));
        for (int j = i + 1; j < k; ++j) r += log_int(m[i] - m[j]);
    }
    return r;
}

double log_multinomial(const std::vector<int>& parts, int n) {
    double r = log_factorial(n);
    for (int v : parts) r -= log_factorial(v);
    return r;
}

double log_rearrangement_count(const std::vector<int>& sorted_parts) {
    const int theta = static_cast<int>(sorted_parts.size());
    double r = log_factorial(theta);
    int run = 1;
    for (int j = 1; j <= theta; ++j) {
        if (j < theta && sorted_parts[j] == sorted_parts[j - 1]) {
            ++run;
        } else {
            r -= log_factorial(run);
            run = 1;
        }
    }
    return r;
}

double log_weyl_dimension(const std::vector<int>& mu_parts, int theta) {
    double r = 0.0;
    auto part = [&](int i) { return i < static_cast<int>(mu_parts.size()) ? mu_parts[i] : 0; };
    for (int i = 0; i < theta; ++i) {
        for (int j = i + 1; j < theta; ++j) {
            r += log_int(part(i) - part(j) + j - i);
            r -= log_int(j - i);
        }
    }
    return r;
}

}  // namespace mfspin
