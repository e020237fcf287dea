#include "ncchaos/sum_moment.hpp"

#include <array>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <mutex>
#include <shared_mutex>
#include <string>
#include <thread>
#include <unordered_map>

#include "ncchaos/errors.hpp"
#include "ncchaos/words.hpp"

namespace ncchaos {

ChebyshevSumSpec::ChebyshevSumSpec(Kernel kernel_, std::vector<int> orders_)
    : kernel(std::move(kernel_)), orders(std::move(orders_)) {
    ValidationReport rep = validate(kernel);
    if (!rep.mirror) throw DomainError("ChebyshevSumSpec: kernel is not mirror symmetric");
    if (!rep.diagonal_free) throw DomainError("ChebyshevSumSpec: kernel does not vanish on diagonals");
    if (std::fabs(rep.variance - 1.0) > 1e-9)
        throw DomainError("ChebyshevSumSpec: kernel variance " + std::to_string(rep.variance) +
                          " is not 1");
    if (static_cast<int>(orders.size()) != kernel.d)
        throw DomainError("ChebyshevSumSpec: orders length must equal kernel arity");
    for (std::size_t i = 0; i < orders.size(); ++i) {
        if (orders[i] < 1) throw DomainError("ChebyshevSumSpec: orders must be positive");
        if (orders[i] != orders[orders.size() - 1 - i])
            throw DomainError("ChebyshevSumSpec: orders must be palindromic");
    }
}

namespace {

constexpr std::size_t kMaxLetters = 32;
constexpr std::size_t kChunks = 64; // fixed partition of the outer loop, thread-count independent

struct PatternKey {
    std::array<std::uint8_t, kMaxLetters> bytes{};
    std::uint8_t len = 0;

    bool operator==(const PatternKey& o) const {
        return len == o.len && std::equal(bytes.begin(), bytes.begin() + len, o.bytes.begin());
    }
};

struct PatternHash {
    std::size_t operator()(const PatternKey& k) const {
        std::uint64_t h = 1469598103934665603ULL;
        for (std::uint8_t i = 0; i < k.len; ++i) {
            h ^= k.bytes[i];
            h *= 1099511628211ULL;
        }
        return static_cast<std::size_t>(h);
    }
};

// phi value per collision pattern, shared across worker threads; duplicated
// computation of the same key is harmless (values are deterministic)
class PatternCache {
public:
    bool find(const PatternKey& key, double& out) const {
        std::shared_lock lock(mu_);
        auto it = map_.find(key);
        if (it == map_.end()) return false;
        out = it->second;
        return true;
    }

    void insert(const PatternKey& key, double value) {
        std::unique_lock lock(mu_);
        map_.emplace(key, value);
    }

    std::size_t size() const {
        std::shared_lock lock(mu_);
        return map_.size();
    }

private:
    mutable std::shared_mutex mu_;
    std::unordered_map<PatternKey, double, PatternHash> map_;
};

struct Slot {
    std::vector<std::pair<Index, double>> entries; // sorted copy of the kernel map
    std::vector<IntPolynomial> transforms;         // one per tuple position
};

int resolve_threads(int requested) {
    if (requested > 0) return requested;
    if (const char* env = std::getenv("NCCHAOS_THREADS")) {
        int v = std::atoi(env);
        if (v > 0) return v;
    }
    unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? static_cast<int>(hw) : 1;
}

class SumEvaluator {
public:
    SumEvaluator(std::vector<Slot> slots, const FreeLaw& law, const SumMomentOptions& opts)
        : slots_(std::move(slots)), law_(law), opts_(opts) {
        for (const auto& slot : slots_) letters_ += slot.transforms.size();
        if (letters_ > kMaxLetters)
            throw ResourceError("sum_joint_moment: " + std::to_string(letters_) +
                                " letters exceed the supported maximum of " +
                                std::to_string(kMaxLetters));
        long double tuples = 1.0L;
        for (const auto& slot : slots_) tuples *= static_cast<long double>(slot.entries.size());
        if (tuples > static_cast<long double>(opts_.tuple_budget))
            throw ResourceError("sum_joint_moment: estimated " + std::to_string(static_cast<double>(tuples)) +
                                " tuples exceed budget " + std::to_string(opts_.tuple_budget));
        transforms_flat_.reserve(letters_);
        offsets_.reserve(slots_.size());
        std::size_t off = 0;
        for (const auto& slot : slots_) {
            offsets_.push_back(off);
            off += slot.transforms.size();
            for (const auto& t : slot.transforms) transforms_flat_.push_back(&t);
        }
        fam_ = VariableFamily::iid(law_, static_cast<int>(letters_));
    }

    SumMomentResult run() {
        SumMomentResult result;
        result.exact = law_.exact;
        if (slots_.empty()) {
            result.value = 1.0;
            return result;
        }
        for (const auto& slot : slots_)
            if (slot.entries.empty()) return result; // zero kernel: empty sum

        const std::size_t outer = slots_[0].entries.size();
        const std::size_t chunks = std::min(kChunks, outer);
        std::vector<double> partial(chunks, 0.0);
        std::vector<std::uint64_t> counts(chunks, 0);

        int threads = resolve_threads(opts_.threads);
        if (!opts_.use_cache) threads = 1; // uncached runs are test-only and serial

        std::atomic<std::size_t> next{0};
        auto worker = [&] {
            Walker walker(*this);
            for (;;) {
                std::size_t c = next.fetch_add(1);
                if (c >= chunks) break;
                std::size_t lo = c * outer / chunks;
                std::size_t hi = (c + 1) * outer / chunks;
                partial[c] = walker.sum_range(lo, hi, counts[c]);
            }
        };
        if (threads <= 1) {
            worker();
        } else {
            std::vector<std::thread> pool;
            pool.reserve(static_cast<std::size_t>(threads));
            for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
            for (auto& th : pool) th.join();
        }

        double total = 0.0;
        std::uint64_t tuples = 0;
        for (std::size_t c = 0; c < chunks; ++c) {
            total += partial[c];
            tuples += counts[c];
        }
        result.value = total;
        result.tuples_visited = tuples;
        result.patterns_evaluated = opts_.use_cache ? cache_.size() : uncached_evals_.load();
        return result;
    }

private:
    class Walker {
    public:
        explicit Walker(SumEvaluator& ev) : ev_(ev), idx_(ev.letters_, 0) {}

        double sum_range(std::size_t lo, std::size_t hi, std::uint64_t& count) {
            acc_ = 0.0;
            count_ = 0;
            const auto& entries = ev_.slots_[0].entries;
            for (std::size_t e = lo; e < hi; ++e) {
                place(0, e);
                descend(1, entries[e].second);
            }
            count = count_;
            return acc_;
        }

    private:
        void place(std::size_t slot, std::size_t entry) {
            const Index& tuple = ev_.slots_[slot].entries[entry].first;
            std::copy(tuple.begin(), tuple.end(),
                      idx_.begin() + static_cast<long>(ev_.offsets_[slot]));
        }

        void descend(std::size_t slot, double product) {
            if (slot == ev_.slots_.size()) {
                leaf(product);
                return;
            }
            const auto& entries = ev_.slots_[slot].entries;
            for (std::size_t e = 0; e < entries.size(); ++e) {
                place(slot, e);
                descend(slot + 1, product * entries[e].second);
            }
        }

        void leaf(double product) {
            ++count_;
            PatternKey key;
            key.len = static_cast<std::uint8_t>(ev_.letters_);
            std::int32_t seen[kMaxLetters];
            std::uint8_t distinct = 0;
            for (std::size_t p = 0; p < ev_.letters_; ++p) {
                std::int32_t v = idx_[p];
                std::uint8_t rank = 0;
                while (rank < distinct && seen[rank] != v) ++rank;
                if (rank == distinct) seen[distinct++] = v;
                key.bytes[p] = rank;
            }
            double phi;
            if (ev_.opts_.use_cache) {
                if (!ev_.cache_.find(key, phi)) {
                    phi = ev_.eval_pattern(key);
                    ev_.cache_.insert(key, phi);
                }
            } else {
                phi = ev_.eval_pattern(key);
                ++ev_.uncached_evals_;
            }
            acc_ += product * phi;
        }

        SumEvaluator& ev_;
        std::vector<std::int32_t> idx_;
        double acc_ = 0.0;
        std::uint64_t count_ = 0;
    };

    double eval_pattern(const PatternKey& key) const {
        Word w;
        w.letters.reserve(letters_);
        for (std::size_t p = 0; p < letters_; ++p)
            w.letters.push_back(Letter{static_cast<int>(key.bytes[p]), *transforms_flat_[p]});
        return word_moment(fam_, w).value_d;
    }

    std::vector<Slot> slots_;
    const FreeLaw& law_;
    SumMomentOptions opts_;
    std::size_t letters_ = 0;
    std::vector<std::size_t> offsets_;
    std::vector<const IntPolynomial*> transforms_flat_;
    VariableFamily fam_;
    PatternCache cache_;
    mutable std::atomic<std::uint64_t> uncached_evals_{0};
};

std::vector<Slot> build_slots(const std::vector<std::pair<ChebyshevSumSpec, int>>& specs,
                              bool identity_transforms) {
    if (specs.empty()) throw DomainError("sum_joint_moment: no factors");
    int N = specs.front().first.kernel.N;
    std::vector<Slot> slots;
    for (const auto& [spec, exponent] : specs) {
        if (spec.kernel.N != N) throw DomainError("sum_joint_moment: all kernels must share N");
        if (exponent < 0) throw DomainError("sum_joint_moment: negative exponent");
        Slot proto;
        proto.entries.assign(spec.kernel.entries.begin(), spec.kernel.entries.end());
        for (int h : spec.orders)
            proto.transforms.push_back(identity_transforms ? IntPolynomial::x() : cheb_u(h));
        for (int c = 0; c < exponent; ++c) slots.push_back(proto);
    }
    return slots;
}

} // namespace

SumMomentResult sum_joint_moment(const std::vector<std::pair<ChebyshevSumSpec, int>>& specs,
                                 const FreeLaw& input_law, const SumMomentOptions& opts) {
    SumEvaluator ev(build_slots(specs, false), input_law, opts);
    return ev.run();
}

SumMomentResult sum_joint_moment_identity(const std::vector<std::pair<ChebyshevSumSpec, int>>& specs,
                                          const FreeLaw& input_law, const SumMomentOptions& opts) {
    SumEvaluator ev(build_slots(specs, true), input_law, opts);
    return ev.run();
}

} // namespace ncchaos
