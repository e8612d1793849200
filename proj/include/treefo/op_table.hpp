#pragma once

// Extensional operations on a finite carrier {0, ..., n-1}.

#include <bit>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "treefo/trees.hpp"

namespace treefo {

  using Element = std::uint16_t;

  /// Subsets of the carrier are bitmasks, which caps carriers at 64.
  using ElementSet = std::uint64_t;
  inline constexpr std::size_t kMaxCarrier = 64;

  inline ElementSet singleton(Element e) {
    return ElementSet{1} << e;
  }
  inline ElementSet full_set(std::size_t n) {
    return n >= 64 ? ~ElementSet{0} : (ElementSet{1} << n) - 1;
  }
  inline bool contains(ElementSet s, Element e) {
    return (s >> e) & 1U;
  }
  inline std::size_t cardinality(ElementSet s) {
    return static_cast<std::size_t>(std::popcount(s));
  }
  std::vector<Element> elements_of(ElementSet s);
  ElementSet           set_of(std::vector<Element> const& es);

  /// A total function carrier^arity -> carrier. Argument tuples are indexed
  /// little-endian: the first argument varies fastest.
  class OpTable {
   public:
    OpTable() = default;
    OpTable(std::size_t arity, std::size_t carrier, std::vector<Element> values);

    static OpTable constant(std::size_t carrier, std::size_t arity, Element c);
    static OpTable projection(std::size_t carrier, std::size_t arity,
                              std::size_t j);
    static OpTable identity(std::size_t carrier) {
      return projection(carrier, 1, 0);
    }

    std::size_t arity() const noexcept {
      return arity_;
    }
    std::size_t carrier_size() const noexcept {
      return carrier_;
    }
    std::vector<Element> const& values() const noexcept {
      return values_;
    }
    std::size_t size() const noexcept {
      return values_.size();
    }

    Element at(std::size_t index) const {
      return values_[index];
    }
    Element operator()(std::vector<Element> const& args) const {
      return values_[index_of(args)];
    }
    std::size_t          index_of(std::vector<Element> const& args) const;
    std::vector<Element> decode(std::size_t index) const;

    bool                       is_constant() const;
    std::optional<std::size_t> as_projection() const;
    bool                       depends_on(std::size_t i) const;
    std::size_t                essential_arity() const;
    /// Image of the whole carrier.
    ElementSet image() const;
    /// Maps every tuple over s into s.
    bool preserves(ElementSet s) const;

    /// this(inner_0, ..., inner_{k-1}); all inner tables share one arity.
    OpTable compose(std::vector<OpTable> const& inner) const;
    /// x -> this(x, ..., x)
    OpTable diagonal() const;
    /// Reads the table on tuples over `domain` and renames values to their
    /// positions in `domain`. Requires preserves(set_of(domain)).
    OpTable restrict_to(std::vector<Element> const& domain) const;

    friend bool operator==(OpTable const&, OpTable const&) = default;
    friend auto operator<=>(OpTable const&, OpTable const&) = default;

   private:
    std::size_t          arity_   = 0;
    std::size_t          carrier_ = 0;
    std::vector<Element> values_;
  };

  /// Compact text: values in index order, e.g. "2 2 0" for a unary map.
  std::string to_string(OpTable const& t);

  /// Table plus the (multi)context over x0..x{n-1} realizing it.
  struct Operation {
    OpTable table;
    Tree    provenance;
  };

}  // namespace treefo
