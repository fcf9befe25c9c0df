#include "titsring/ring.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <sstream>

namespace titsring {

namespace {

constexpr std::uint64_t kMaxCardinality = std::uint64_t{1} << 31;
constexpr std::uint32_t kTableLimit = 256;

std::uint64_t checked_power(std::uint64_t base, unsigned exponent) {
    std::uint64_t result = 1;
    for (unsigned i = 0; i < exponent; ++i) {
        result *= base;
        if (result >= kMaxCardinality) throw std::invalid_argument("ring too large to encode");
    }
    return result;
}

std::uint64_t mod_inverse(std::uint64_t a, std::uint64_t m) {
    std::int64_t old_r = static_cast<std::int64_t>(a % m), r = static_cast<std::int64_t>(m);
    std::int64_t old_s = 1, s = 0;
    while (r != 0) {
        const std::int64_t q = old_r / r;
        std::tie(old_r, r) = std::make_pair(r, old_r - q * r);
        std::tie(old_s, s) = std::make_pair(s, old_s - q * s);
    }
    if (old_r != 1) return 0;
    const auto mm = static_cast<std::int64_t>(m);
    return static_cast<std::uint64_t>(((old_s % mm) + mm) % mm);
}

std::uint64_t parse_number(std::string_view digits, std::string_view whole) {
    if (digits.empty() || !std::all_of(digits.begin(), digits.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
        throw ParseError("bad ring spec '" + std::string(whole) + "': expected a number");
    if (digits.size() > 10) throw ParseError("bad ring spec '" + std::string(whole) + "': number too large");
    return std::stoull(std::string(digits));
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

RingSpec parse_term(std::string_view term, std::string_view whole) {
    term = trim(term);
    const auto fail = [&](const std::string& why) {
        return ParseError("bad ring spec '" + std::string(whole) + "': " + why);
    };
    try {
        if (term.substr(0, 2) == "Z/") return RingSpec::modular(parse_number(term.substr(2), whole));
        if (!term.empty() && term.front() == 'F') {
            const auto bracket = term.find('[');
            if (bracket == std::string_view::npos) {
                const auto p = parse_number(term.substr(1), whole);
                if (!is_prime(p)) throw fail("F" + std::to_string(p) + " is not a prime field");
                return RingSpec::prime_field(p);
            }
            const auto p = parse_number(term.substr(1, bracket - 1), whole);
            const auto rest = term.substr(bracket);
            if (rest == "[e]") return RingSpec::truncated_poly(p, 2);
            if (rest.substr(0, 4) == "[e]^") {
                const auto k = parse_number(rest.substr(4), whole);
                return RingSpec::truncated_poly(p, static_cast<unsigned>(k));
            }
            throw fail("expected '[e]' or '[e]^k'");
        }
    } catch (const ParseError&) {
        throw;
    } catch (const std::exception& e) {
        throw fail(e.what());
    }
    throw fail("unknown ring '" + std::string(term) + "'");
}

}  // namespace

bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

std::vector<std::uint64_t> prime_divisors(std::uint64_t n) {
    std::vector<std::uint64_t> out;
    for (std::uint64_t d = 2; d * d <= n; ++d) {
        if (n % d != 0) continue;
        out.push_back(d);
        while (n % d == 0) n /= d;
    }
    if (n > 1) out.push_back(n);
    return out;
}

// ---------------------------------------------------------------- RingSpec

RingSpec RingSpec::modular(std::uint64_t m) {
    if (m < 2) throw std::invalid_argument("Z/m requires m >= 2");
    if (m >= kMaxCardinality) throw std::invalid_argument("ring too large to encode");
    RingSpec s;
    s.kind_ = RingKind::Modular;
    s.modulus_ = m;
    s.cardinality_ = m;
    return s;
}

RingSpec RingSpec::prime_field(std::uint64_t p) {
    if (!is_prime(p)) throw std::invalid_argument("F_p requires p prime");
    RingSpec s = modular(p);
    s.kind_ = RingKind::PrimeField;
    return s;
}

RingSpec RingSpec::truncated_poly(std::uint64_t p, unsigned k) {
    if (!is_prime(p)) throw std::invalid_argument("F_p[x]/(x^k) requires p prime");
    if (k < 1) throw std::invalid_argument("F_p[x]/(x^k) requires k >= 1");
    RingSpec s;
    s.kind_ = RingKind::TruncatedPoly;
    s.modulus_ = p;
    s.degree_ = k;
    s.cardinality_ = checked_power(p, k);
    return s;
}

RingSpec RingSpec::product(const std::vector<RingSpec>& factors) {
    std::vector<RingSpec> flat;
    for (const auto& f : factors) {
        if (f.kind() == RingKind::Product)
            flat.insert(flat.end(), f.factors().begin(), f.factors().end());
        else
            flat.push_back(f);
    }
    if (flat.empty()) throw std::invalid_argument("product of zero rings");
    if (flat.size() == 1) return flat.front();
    RingSpec s;
    s.kind_ = RingKind::Product;
    s.cardinality_ = 1;
    for (const auto& f : flat) {
        s.cardinality_ *= f.cardinality();
        if (s.cardinality_ >= kMaxCardinality) throw std::invalid_argument("ring too large to encode");
    }
    s.factors_ = std::move(flat);
    return s;
}

RingSpec RingSpec::parse(std::string_view text) {
    std::vector<RingSpec> terms;
    std::size_t start = 0;
    while (true) {
        const auto pos = text.find('x', start);
        terms.push_back(parse_term(text.substr(start, pos == std::string_view::npos ? pos : pos - start), text));
        if (pos == std::string_view::npos) break;
        start = pos + 1;
    }
    return product(terms);
}

std::string RingSpec::to_string() const {
    switch (kind_) {
        case RingKind::Modular: return "Z/" + std::to_string(modulus_);
        case RingKind::PrimeField: return "F" + std::to_string(modulus_);
        case RingKind::TruncatedPoly: return "F" + std::to_string(modulus_) + "[e]^" + std::to_string(degree_);
        case RingKind::Product: {
            std::string out;
            for (const auto& f : factors_) out += (out.empty() ? "" : "x") + f.to_string();
            return out;
        }
    }
    return {};
}

bool RingSpec::operator==(const RingSpec& other) const {
    return kind_ == other.kind_ && modulus_ == other.modulus_ && degree_ == other.degree_ &&
           factors_ == other.factors_;
}

// -------------------------------------------------------------------- Ring

Ring::Ring(RingSpec spec) : spec_(std::move(spec)), size_(static_cast<std::uint32_t>(spec_.cardinality())) {
    switch (spec_.kind()) {
        case RingKind::Modular:
        case RingKind::PrimeField:
            residue_primes_ = prime_divisors(spec_.modulus());
            break;
        case RingKind::TruncatedPoly:
            residue_primes_ = {spec_.modulus()};
            break;
        case RingKind::Product: {
            std::uint32_t stride = 1;
            strides_.assign(spec_.factors().size(), 0);
            for (std::size_t i = spec_.factors().size(); i-- > 0;) {
                strides_[i] = stride;
                stride *= static_cast<std::uint32_t>(spec_.factors()[i].cardinality());
            }
            one_ = 0;
            for (std::size_t i = 0; i < spec_.factors().size(); ++i) {
                factors_.push_back(std::make_shared<const Ring>(spec_.factors()[i]));
                one_ += factors_.back()->one() * strides_[i];
                for (std::size_t j = 0; j < factors_.back()->residue_primes().size(); ++j) {
                    residue_primes_.push_back(factors_.back()->residue_primes()[j]);
                    residue_origin_.emplace_back(i, j);
                }
            }
            break;
        }
    }
    if (size_ <= kTableLimit) {
        add_.resize(std::size_t{size_} * size_);
        mul_.resize(std::size_t{size_} * size_);
        neg_.resize(size_);
        inv_.resize(size_);
        for (Elem a = 0; a < size_; ++a) {
            neg_[a] = compute_neg(a);
            const auto inv = compute_inverse(a);
            inv_[a] = inv ? static_cast<std::int64_t>(*inv) : -1;
            for (Elem b = 0; b < size_; ++b) {
                add_[a * size_ + b] = compute_add(a, b);
                mul_[a * size_ + b] = compute_mul(a, b);
            }
        }
        table_ = true;
    }
}

std::vector<Elem> Ring::split(Elem a) const {
    std::vector<Elem> parts(factors_.size());
    for (std::size_t i = 0; i < factors_.size(); ++i) parts[i] = (a / strides_[i]) % factors_[i]->size();
    return parts;
}

Elem Ring::join(const std::vector<Elem>& parts) const {
    Elem out = 0;
    for (std::size_t i = 0; i < parts.size(); ++i) out += parts[i] * strides_[i];
    return out;
}

Elem Ring::from_integer(std::int64_t value) const {
    switch (spec_.kind()) {
        case RingKind::Modular:
        case RingKind::PrimeField: {
            const auto m = static_cast<std::int64_t>(spec_.modulus());
            return static_cast<Elem>(((value % m) + m) % m);
        }
        case RingKind::TruncatedPoly: {
            const auto p = static_cast<std::int64_t>(spec_.modulus());
            return static_cast<Elem>(((value % p) + p) % p);
        }
        case RingKind::Product: {
            std::vector<Elem> parts;
            for (const auto& f : factors_) parts.push_back(f->from_integer(value));
            return join(parts);
        }
    }
    return 0;
}

Elem Ring::compute_add(Elem a, Elem b) const {
    switch (spec_.kind()) {
        case RingKind::Modular:
        case RingKind::PrimeField: return static_cast<Elem>((std::uint64_t{a} + b) % spec_.modulus());
        case RingKind::TruncatedPoly: {
            const auto p = static_cast<Elem>(spec_.modulus());
            Elem out = 0, scale = 1;
            for (unsigned i = 0; i < spec_.degree(); ++i) {
                out += ((a % p + b % p) % p) * scale;
                a /= p;
                b /= p;
                scale *= p;
            }
            return out;
        }
        case RingKind::Product: {
            auto x = split(a);
            const auto y = split(b);
            for (std::size_t i = 0; i < x.size(); ++i) x[i] = factors_[i]->add(x[i], y[i]);
            return join(x);
        }
    }
    return 0;
}

Elem Ring::compute_mul(Elem a, Elem b) const {
    switch (spec_.kind()) {
        case RingKind::Modular:
        case RingKind::PrimeField: return static_cast<Elem>((std::uint64_t{a} * b) % spec_.modulus());
        case RingKind::TruncatedPoly: {
            const auto p = spec_.modulus();
            const unsigned k = spec_.degree();
            std::vector<std::uint64_t> x(k), y(k), z(k, 0);
            for (unsigned i = 0; i < k; ++i) {
                x[i] = a % p;
                y[i] = b % p;
                a /= static_cast<Elem>(p);
                b /= static_cast<Elem>(p);
            }
            for (unsigned i = 0; i < k; ++i)
                for (unsigned j = 0; i + j < k; ++j) z[i + j] = (z[i + j] + x[i] * y[j]) % p;
            Elem out = 0, scale = 1;
            for (unsigned i = 0; i < k; ++i) {
                out += static_cast<Elem>(z[i]) * scale;
                scale *= static_cast<Elem>(p);
            }
            return out;
        }
        case RingKind::Product: {
            auto x = split(a);
            const auto y = split(b);
            for (std::size_t i = 0; i < x.size(); ++i) x[i] = factors_[i]->mul(x[i], y[i]);
            return join(x);
        }
    }
    return 0;
}

Elem Ring::compute_neg(Elem a) const {
    switch (spec_.kind()) {
        case RingKind::Modular:
        case RingKind::PrimeField: return static_cast<Elem>((spec_.modulus() - a) % spec_.modulus());
        case RingKind::TruncatedPoly: {
            const auto p = static_cast<Elem>(spec_.modulus());
            Elem out = 0, scale = 1;
            for (unsigned i = 0; i < spec_.degree(); ++i) {
                out += ((p - a % p) % p) * scale;
                a /= p;
                scale *= p;
            }
            return out;
        }
        case RingKind::Product: {
            auto x = split(a);
            for (std::size_t i = 0; i < x.size(); ++i) x[i] = factors_[i]->neg(x[i]);
            return join(x);
        }
    }
    return 0;
}

std::optional<Elem> Ring::compute_inverse(Elem a) const {
    switch (spec_.kind()) {
        case RingKind::Modular:
        case RingKind::PrimeField: {
            const auto inv = mod_inverse(a, spec_.modulus());
            if (inv == 0) return std::nullopt;
            return static_cast<Elem>(inv);
        }
        case RingKind::TruncatedPoly: {
            const auto p = spec_.modulus();
            const unsigned k = spec_.degree();
            std::vector<std::uint64_t> c(k), b(k, 0);
            for (unsigned i = 0; i < k; ++i) {
                c[i] = a % p;
                a /= static_cast<Elem>(p);
            }
            if (c[0] == 0) return std::nullopt;
            b[0] = mod_inverse(c[0], p);
            for (unsigned j = 1; j < k; ++j) {
                std::uint64_t acc = 0;
                for (unsigned i = 1; i <= j; ++i) acc = (acc + c[i] * b[j - i]) % p;
                b[j] = (p - (b[0] * acc) % p) % p;
            }
            Elem out = 0, scale = 1;
            for (unsigned i = 0; i < k; ++i) {
                out += static_cast<Elem>(b[i]) * scale;
                scale *= static_cast<Elem>(p);
            }
            return out;
        }
        case RingKind::Product: {
            auto x = split(a);
            for (std::size_t i = 0; i < x.size(); ++i) {
                const auto inv = factors_[i]->inverse(x[i]);
                if (!inv) return std::nullopt;
                x[i] = *inv;
            }
            return join(x);
        }
    }
    return std::nullopt;
}

std::optional<Elem> Ring::inverse(Elem a) const {
    if (table_) {
        if (inv_[a] < 0) return std::nullopt;
        return static_cast<Elem>(inv_[a]);
    }
    return compute_inverse(a);
}

std::vector<Elem> Ring::units() const {
    std::vector<Elem> out;
    for (Elem a = 0; a < size_; ++a)
        if (is_unit(a)) out.push_back(a);
    return out;
}

std::vector<Elem> Ring::additive_generators() const {
    switch (spec_.kind()) {
        case RingKind::Modular:
        case RingKind::PrimeField: return {one_};
        case RingKind::TruncatedPoly: {
            std::vector<Elem> out;
            Elem power = 1;
            for (unsigned i = 0; i < spec_.degree(); ++i) {
                out.push_back(power);
                power *= static_cast<Elem>(spec_.modulus());
            }
            return out;
        }
        case RingKind::Product: {
            std::vector<Elem> out;
            for (std::size_t i = 0; i < factors_.size(); ++i)
                for (const Elem g : factors_[i]->additive_generators()) out.push_back(g * strides_[i]);
            return out;
        }
    }
    return {};
}

std::uint64_t Ring::residue(std::size_t ideal, Elem a) const {
    if (spec_.kind() == RingKind::Product) {
        const auto [factor, sub] = residue_origin_[ideal];
        return factors_[factor]->residue(sub, (a / strides_[factor]) % factors_[factor]->size());
    }
    return a % residue_primes_[ideal];
}

std::vector<std::uint64_t> Ring::payload(Elem a) const {
    switch (spec_.kind()) {
        case RingKind::Modular:
        case RingKind::PrimeField: return {a};
        case RingKind::TruncatedPoly: {
            std::vector<std::uint64_t> out;
            for (unsigned i = 0; i < spec_.degree(); ++i) {
                out.push_back(a % spec_.modulus());
                a /= static_cast<Elem>(spec_.modulus());
            }
            return out;
        }
        case RingKind::Product: {
            const auto parts = split(a);
            return {parts.begin(), parts.end()};
        }
    }
    return {};
}

std::string Ring::format(Elem a) const {
    switch (spec_.kind()) {
        case RingKind::Modular:
        case RingKind::PrimeField: return std::to_string(a);
        case RingKind::TruncatedPoly: {
            const auto coeffs = payload(a);
            std::string out;
            for (std::size_t i = 0; i < coeffs.size(); ++i) {
                if (coeffs[i] == 0) continue;
                if (!out.empty()) out += "+";
                const bool bare = i > 0 && coeffs[i] == 1;
                if (!bare) out += std::to_string(coeffs[i]);
                if (i >= 1) out += "x";
                if (i >= 2) out += "^" + std::to_string(i);
            }
            return out.empty() ? "0" : out;
        }
        case RingKind::Product: {
            const auto parts = split(a);
            std::string out = "(";
            for (std::size_t i = 0; i < parts.size(); ++i)
                out += (i ? "," : "") + factors_[i]->format(parts[i]);
            return out + ")";
        }
    }
    return {};
}

RingPtr make_ring(const RingSpec& spec) { return std::make_shared<const Ring>(spec); }

// ------------------------------------------------------------- RingElement

RingElement::RingElement(RingPtr ring, Elem value) : ring_(std::move(ring)), value_(value) {
    if (!ring_) throw std::invalid_argument("element without a ring");
    if (value_ >= ring_->size()) throw std::out_of_range("element index outside the ring");
}

const Ring& RingElement::checked(const RingElement& other) const {
    if (ring_ != other.ring_ && !(ring_->spec() == other.ring_->spec()))
        throw SpecMismatch("operands live in " + ring_->spec().to_string() + " and " +
                           other.ring_->spec().to_string());
    return *ring_;
}

RingElement RingElement::operator+(const RingElement& other) const {
    return {ring_, checked(other).add(value_, other.value_)};
}

RingElement RingElement::operator-(const RingElement& other) const {
    return {ring_, checked(other).sub(value_, other.value_)};
}

RingElement RingElement::operator*(const RingElement& other) const {
    return {ring_, checked(other).mul(value_, other.value_)};
}

bool RingElement::operator==(const RingElement& other) const {
    return ring_->spec() == other.ring_->spec() && value_ == other.value_;
}

RingElement arithmetic(const RingElement& a, const RingElement& b, ArithOp op) {
    switch (op) {
        case ArithOp::Add: return a + b;
        case ArithOp::Sub: return a - b;
        case ArithOp::Mul: return a * b;
        case ArithOp::Neg:
            if (!(a.ring()->spec() == b.ring()->spec())) throw SpecMismatch("operands live in different rings");
            return -a;
    }
    return a;
}

std::optional<RingElement> unit_inverse(const RingElement& a) {
    const auto inv = a.ring()->inverse(a.index());
    if (!inv) return std::nullopt;
    return RingElement(a.ring(), *inv);
}

std::vector<RingElement> enumerate_elements(const RingSpec& spec, const Budget& budget) {
    check_budget(budget, spec.cardinality(), "ring elements of " + spec.to_string());
    const auto ring = make_ring(spec);
    std::vector<RingElement> out;
    out.reserve(ring->size());
    for (Elem a = 0; a < ring->size(); ++a) out.emplace_back(ring, a);
    return out;
}

RadicalShape radical_shape(const RingSpec& spec) {
    switch (spec.kind()) {
        case RingKind::Modular:
        case RingKind::PrimeField: {
            const auto primes = prime_divisors(spec.modulus());
            std::uint64_t rad = 1;
            for (const auto p : primes) rad *= p;
            return {BigInt(spec.modulus() / rad), primes};
        }
        case RingKind::TruncatedPoly:
            return {ipow(BigInt(spec.modulus()), spec.degree() - 1), {spec.modulus()}};
        case RingKind::Product: {
            RadicalShape out{1, {}};
            for (const auto& f : spec.factors()) {
                auto part = radical_shape(f);
                out.radical_size *= part.radical_size;
                out.residue_field_orders.insert(out.residue_field_orders.end(), part.residue_field_orders.begin(),
                                                part.residue_field_orders.end());
            }
            return out;
        }
    }
    return {};
}

namespace {

Elem radical_generator(const Ring& ring) {
    const auto& spec = ring.spec();
    switch (spec.kind()) {
        case RingKind::Modular:
        case RingKind::PrimeField: {
            std::uint64_t rad = 1;
            for (const auto p : prime_divisors(spec.modulus())) rad *= p;
            return static_cast<Elem>(rad % spec.modulus());
        }
        case RingKind::TruncatedPoly: return spec.degree() >= 2 ? static_cast<Elem>(spec.modulus()) : 0;
        case RingKind::Product: {
            Elem out = 0, stride = 1;
            for (std::size_t i = spec.factors().size(); i-- > 0;) {
                const Ring factor(spec.factors()[i]);
                out += radical_generator(factor) * stride;
                stride *= factor.size();
            }
            return out;
        }
    }
    return 0;
}

}  // namespace

RadicalData radical_data(const RingSpec& spec) {
    const auto ring = make_ring(spec);
    RadicalData out;
    out.generators.emplace_back(ring, radical_generator(*ring));
    for (Elem a = 0; a < ring->size(); ++a) {
        bool in_all = true;
        for (std::size_t i = 0; i < ring->residue_primes().size() && in_all; ++i) in_all = ring->residue(i, a) == 0;
        if (in_all) out.elements.emplace_back(ring, a);
    }
    out.residue_field_orders = ring->residue_primes();
    return out;
}

}  // namespace titsring
