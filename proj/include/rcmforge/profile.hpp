#pragma once

#include "model.hpp"

#include <array>
#include <bitset>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace rcm
{

/// The 19 requirement property codes, in the column order of the approach
/// registry.
enum class Property : std::uint8_t
{
  A,
  A_vt,
  A_rt,
  A_pt,
  C,
  C_vt,
  C_pt,
  T,
  T_vt,
  T_rt,
  SP,
  SP_vt,
  EP,
  EP_vt,
  SA,
  SA_vt,
  EA,
  EA_vt,
  Hidden
};

inline constexpr std::size_t kPropertyCount = 19;

inline constexpr std::array<Property, kPropertyCount> kAllProperties{
    Property::A,     Property::A_vt,  Property::A_rt,  Property::A_pt, Property::C,     Property::C_vt, Property::C_pt,
    Property::T,     Property::T_vt,  Property::T_rt,  Property::SP,   Property::SP_vt, Property::EP,   Property::EP_vt,
    Property::SA,    Property::SA_vt, Property::EA,    Property::EA_vt, Property::Hidden };

std::string_view to_string( Property property );
std::optional<Property> property_from_string( std::string_view code );

/// Code for a time sub-component on a component whose own code is `base`
/// (C + Valid -> C-vt). Empty if the combination has no code.
std::optional<Property> time_property( Property base, TimeSlot slot );

class PropertyProfile
{
public:
  PropertyProfile() = default;
  PropertyProfile( std::initializer_list<Property> properties );

  void insert( Property property ) { _bits.set( static_cast<std::size_t>( property ) ); }
  bool contains( Property property ) const { return _bits.test( static_cast<std::size_t>( property ) ); }
  std::size_t size() const { return _bits.count(); }
  bool empty() const { return _bits.none(); }

  bool is_subset_of( PropertyProfile const& other ) const { return ( _bits & ~other._bits ).none(); }

  /// Members in column order.
  std::vector<Property> properties() const;

  /// "{A, C, SP}" in column order.
  std::string to_string() const;

  /// Comma-separated codes, braces optional.
  static PropertyProfile parse( std::string_view codes );

  std::bitset<kPropertyCount> const& bits() const { return _bits; }

  friend bool operator==( PropertyProfile const&, PropertyProfile const& ) = default;

private:
  std::bitset<kPropertyCount> _bits;
};

/// Codes instantiated by a primitive that passes validation. Throws
/// ContractError when the primitive does not pass.
PropertyProfile property_profile( PrimitiveRequirement const& pr );

} // namespace rcm
