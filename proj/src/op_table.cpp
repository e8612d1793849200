#include "treefo/op_table.hpp"

#include "treefo/errors.hpp"

namespace treefo {

  std::vector<Element> elements_of(ElementSet s) {
    std::vector<Element> out;
    while (s != 0) {
      out.push_back(static_cast<Element>(std::countr_zero(s)));
      s &= s - 1;
    }
    return out;
  }

  ElementSet set_of(std::vector<Element> const& es) {
    ElementSet s = 0;
    for (Element e : es) {
      s |= singleton(e);
    }
    return s;
  }

  namespace {

    std::size_t power(std::size_t base, std::size_t exp) {
      std::size_t r = 1;
      for (std::size_t i = 0; i < exp; ++i) {
        r *= base;
      }
      return r;
    }

  }  // namespace

  OpTable::OpTable(std::size_t arity, std::size_t carrier,
                   std::vector<Element> values)
      : arity_(arity), carrier_(carrier), values_(std::move(values)) {
    if (carrier_ > kMaxCarrier) {
      throw ConfigError("carrier larger than "
                        + std::to_string(kMaxCarrier) + " elements");
    }
    if (values_.size() != power(carrier_, arity_)) {
      throw ContractViolation("operation table of arity "
                              + std::to_string(arity_) + " has "
                              + std::to_string(values_.size()) + " entries");
    }
    for (Element v : values_) {
      if (v >= carrier_) {
        throw ContractViolation("operation table value outside the carrier");
      }
    }
  }

  OpTable OpTable::constant(std::size_t carrier, std::size_t arity,
                            Element c) {
    return OpTable(arity, carrier,
                   std::vector<Element>(power(carrier, arity), c));
  }

  OpTable OpTable::projection(std::size_t carrier, std::size_t arity,
                              std::size_t j) {
    std::vector<Element> v(power(carrier, arity));
    std::size_t const    stride = power(carrier, j);
    for (std::size_t i = 0; i < v.size(); ++i) {
      v[i] = static_cast<Element>((i / stride) % carrier);
    }
    return OpTable(arity, carrier, std::move(v));
  }

  std::size_t OpTable::index_of(std::vector<Element> const& args) const {
    std::size_t idx = 0;
    for (std::size_t i = args.size(); i-- > 0;) {
      idx = idx * carrier_ + args[i];
    }
    return idx;
  }

  std::vector<Element> OpTable::decode(std::size_t index) const {
    std::vector<Element> args(arity_);
    for (std::size_t i = 0; i < arity_; ++i) {
      args[i] = static_cast<Element>(index % carrier_);
      index /= carrier_;
    }
    return args;
  }

  bool OpTable::is_constant() const {
    for (Element v : values_) {
      if (v != values_.front()) {
        return false;
      }
    }
    return true;
  }

  std::optional<std::size_t> OpTable::as_projection() const {
    for (std::size_t j = 0; j < arity_; ++j) {
      if (*this == projection(carrier_, arity_, j)) {
        return j;
      }
    }
    return std::nullopt;
  }

  bool OpTable::depends_on(std::size_t i) const {
    std::size_t const stride = power(carrier_, i);
    for (std::size_t idx = 0; idx < values_.size(); ++idx) {
      std::size_t const digit = (idx / stride) % carrier_;
      if (digit == 0) {
        continue;
      }
      if (values_[idx] != values_[idx - digit * stride]) {
        return true;
      }
    }
    return false;
  }

  std::size_t OpTable::essential_arity() const {
    std::size_t n = 0;
    for (std::size_t i = 0; i < arity_; ++i) {
      n += depends_on(i) ? 1 : 0;
    }
    return n;
  }

  ElementSet OpTable::image() const {
    ElementSet s = 0;
    for (Element v : values_) {
      s |= singleton(v);
    }
    return s;
  }

  bool OpTable::preserves(ElementSet s) const {
    auto const dom = elements_of(s);
    if (arity_ == 0) {
      return contains(s, values_[0]);
    }
    if (dom.empty()) {
      return true;
    }
    std::vector<std::size_t> t(arity_, 0);
    for (;;) {
      std::size_t idx = 0;
      for (std::size_t i = arity_; i-- > 0;) {
        idx = idx * carrier_ + dom[t[i]];
      }
      if (!contains(s, values_[idx])) {
        return false;
      }
      std::size_t i = 0;
      while (i < arity_ && ++t[i] == dom.size()) {
        t[i++] = 0;
      }
      if (i == arity_) {
        return true;
      }
    }
  }

  OpTable OpTable::compose(std::vector<OpTable> const& inner) const {
    if (inner.size() != arity_) {
      throw ContractViolation("composition with the wrong number of arguments");
    }
    if (arity_ == 0) {
      return *this;
    }
    std::size_t const m = inner.front().arity_;
    std::size_t const len = power(carrier_, m);
    std::vector<Element> out(len);
    std::vector<Element> args(arity_);
    for (std::size_t idx = 0; idx < len; ++idx) {
      for (std::size_t i = 0; i < arity_; ++i) {
        args[i] = inner[i].values_[idx];
      }
      out[idx] = values_[index_of(args)];
    }
    return OpTable(m, carrier_, std::move(out));
  }

  OpTable OpTable::diagonal() const {
    std::vector<Element> out(carrier_);
    for (std::size_t c = 0; c < carrier_; ++c) {
      std::vector<Element> args(arity_, static_cast<Element>(c));
      out[c] = (*this)(args);
    }
    return OpTable(1, carrier_, std::move(out));
  }

  OpTable OpTable::restrict_to(std::vector<Element> const& domain) const {
    std::vector<Element> pos(carrier_, 0);
    std::vector<bool>    in(carrier_, false);
    for (std::size_t i = 0; i < domain.size(); ++i) {
      pos[domain[i]] = static_cast<Element>(i);
      in[domain[i]] = true;
    }
    std::size_t const    k = domain.size();
    std::size_t const    len = power(k, arity_);
    std::vector<Element> out(len);
    for (std::size_t idx = 0; idx < len; ++idx) {
      std::size_t full = 0;
      std::size_t rest = idx;
      std::size_t scale = 1;
      for (std::size_t i = 0; i < arity_; ++i) {
        full += domain[rest % k] * scale;
        rest /= k;
        scale *= carrier_;
      }
      Element v = values_[full];
      if (!in[v]) {
        throw ContractViolation("restriction of an operation that leaves "
                                "the subset");
      }
      out[idx] = pos[v];
    }
    return OpTable(arity_, k, std::move(out));
  }

  std::string to_string(OpTable const& t) {
    std::string s;
    for (std::size_t i = 0; i < t.size(); ++i) {
      if (i > 0) {
        s += ' ';
      }
      s += std::to_string(t.at(i));
    }
    return s;
  }

}  // namespace treefo
