#include <rcmforge/profile.hpp>
#include <rcmforge/validate.hpp>

#include <array>

namespace rcm
{

namespace
{

constexpr std::array<std::string_view, kPropertyCount> kCodes{
    "A",  "A-vt",  "A-rt", "A-pt",  "C",  "C-vt",  "C-pt", "T",     "T-vt",  "T-rt",
    "SP", "SP-vt", "EP",   "EP-vt", "SA", "SA-vt", "EA",   "EA-vt", "Hidden" };

std::string_view trim( std::string_view s )
{
  while ( !s.empty() && ( s.front() == ' ' || s.front() == '\t' ) )
    s.remove_prefix( 1 );
  while ( !s.empty() && ( s.back() == ' ' || s.back() == '\t' || s.back() == '\r' ) )
    s.remove_suffix( 1 );
  return s;
}

bool has_hidden( Predicate const& predicate )
{
  for ( auto const& operand : predicate.operands )
  {
    if ( operand.has_hidden() )
      return true;
  }
  return false;
}

} // namespace

std::string_view to_string( Property property )
{
  return kCodes[static_cast<std::size_t>( property )];
}

std::optional<Property> property_from_string( std::string_view code )
{
  for ( std::size_t i = 0; i < kPropertyCount; ++i )
  {
    if ( kCodes[i] == code )
      return static_cast<Property>( i );
  }
  if ( code == "hidden" )
    return Property::Hidden;
  return std::nullopt;
}

std::optional<Property> time_property( Property base, TimeSlot slot )
{
  switch ( base )
  {
  case Property::A:
    return slot == TimeSlot::Valid ? Property::A_vt : slot == TimeSlot::PreElapsed ? Property::A_pt : Property::A_rt;
  case Property::C:
    if ( slot == TimeSlot::InBetween )
      return std::nullopt;
    return slot == TimeSlot::Valid ? Property::C_vt : Property::C_pt;
  case Property::T:
    if ( slot == TimeSlot::PreElapsed )
      return std::nullopt;
    return slot == TimeSlot::Valid ? Property::T_vt : Property::T_rt;
  case Property::SP:
  case Property::EP:
  case Property::SA:
  case Property::EA:
    if ( slot != TimeSlot::Valid )
      return std::nullopt;
    return static_cast<Property>( static_cast<std::size_t>( base ) + 1 );
  default:
    return std::nullopt;
  }
}

PropertyProfile::PropertyProfile( std::initializer_list<Property> properties )
{
  for ( auto p : properties )
    insert( p );
}

std::vector<Property> PropertyProfile::properties() const
{
  std::vector<Property> out;
  for ( auto p : kAllProperties )
  {
    if ( contains( p ) )
      out.push_back( p );
  }
  return out;
}

std::string PropertyProfile::to_string() const
{
  std::string out = "{";
  bool first = true;
  for ( auto p : properties() )
  {
    if ( !first )
      out += ", ";
    out += rcm::to_string( p );
    first = false;
  }
  return out + "}";
}

PropertyProfile PropertyProfile::parse( std::string_view codes )
{
  codes = trim( codes );
  if ( codes.starts_with( '{' ) && codes.ends_with( '}' ) )
    codes = trim( codes.substr( 1, codes.size() - 2 ) );

  PropertyProfile profile;
  while ( !codes.empty() )
  {
    auto const comma = codes.find( ',' );
    auto const item = trim( codes.substr( 0, comma ) );
    auto const property = property_from_string( item );
    if ( !property )
      throw Error( "unknown property code '" + std::string( item ) + "'" );
    profile.insert( *property );
    if ( comma == std::string_view::npos )
      break;
    codes.remove_prefix( comma + 1 );
  }
  return profile;
}

PropertyProfile property_profile( PrimitiveRequirement const& pr )
{
  if ( !validate_primitive( pr ).passed() )
    throw ContractError( "property_profile requires a primitive that passes validation" );

  PropertyProfile profile;
  auto record = [&]( Component const& component, Property base ) {
    profile.insert( base );
    for ( auto slot : { TimeSlot::PreElapsed, TimeSlot::Valid, TimeSlot::InBetween } )
    {
      if ( component.time( slot ) )
        profile.insert( *time_property( base, slot ) );
    }
    if ( has_hidden( component.core ) )
      profile.insert( Property::Hidden );
  };
  auto record_tree = [&]( std::optional<ComponentTree> const& tree, Property base ) {
    if ( tree )
      tree->for_each_leaf( [&]( Component const& c ) { record( c, base ); } );
  };
  auto record_scope = [&]( std::optional<Scope> const& scope, Property startup, Property endup ) {
    if ( !scope )
      return;
    if ( scope->startup )
      record( *scope->startup, startup );
    if ( scope->endup )
      record( *scope->endup, endup );
  };

  record_tree( pr.conditions, Property::C );
  record_tree( pr.triggers, Property::T );
  record_tree( pr.actions, Property::A );
  record_scope( pr.pre_scope, Property::SP, Property::EP );
  record_scope( pr.action_scope, Property::SA, Property::EA );
  return profile;
}

} // namespace rcm
