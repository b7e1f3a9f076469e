#include <rcmforge/validate.hpp>

namespace rcm
{

std::string_view to_string( Severity severity )
{
  return severity == Severity::Info ? "info" : "fail";
}

std::string_view to_string( ValidationStatus status )
{
  return status == ValidationStatus::Pass ? "PASS" : "FAIL";
}

namespace
{

ComponentKind expected_kind( std::string const& path )
{
  if ( path.starts_with( "conditions" ) )
    return ComponentKind::Condition;
  if ( path.starts_with( "triggers" ) )
    return ComponentKind::Trigger;
  if ( path.starts_with( "actions" ) )
    return ComponentKind::Action;
  if ( path.ends_with( ".startup" ) )
    return ComponentKind::ScopeStartup;
  return ComponentKind::ScopeEndup;
}

} // namespace

ValidationReport validate_primitive( PrimitiveRequirement const& pr )
{
  ValidationReport report;
  auto fail = [&]( std::string code, std::string message, std::string path ) {
    report.issues.push_back( { Severity::Fail, std::move( code ), std::move( message ), std::move( path ) } );
    report.status = ValidationStatus::Fail;
  };

  if ( !pr.actions )
    fail( "missing-action", "missing mandatory action", "actions" );

  for_each_component( pr, [&]( Component const& component, std::string const& path ) {
    auto const expected = expected_kind( path );
    if ( component.kind != expected )
    {
      fail( "kind-mismatch",
            std::string( to_string( component.kind ) ) + " component where " + std::string( to_string( expected ) ) +
                " is required",
            path );
    }
    for ( auto slot : { TimeSlot::PreElapsed, TimeSlot::Valid, TimeSlot::InBetween } )
    {
      if ( component.time( slot ) && !is_eligible( component.kind, slot ) )
      {
        fail( "ineligible-time",
              std::string( to_string( slot ) ) + "-time ineligible on " + std::string( to_string( component.kind ) ),
              path );
      }
    }
  } );

  if ( report.passed() && pr.is_factual_rule() )
    report.issues.push_back( { Severity::Info, "factual-rule", "action-only primitive is a factual rule", "actions" } );

  return report;
}

Predicate complete_predicate( Predicate const& predicate )
{
  if ( predicate.operands.empty() )
    throw Error( "empty predicate" );
  if ( predicate.operands.size() != 1u || !predicate.op.empty() )
    return predicate;

  Predicate completed = predicate;
  completed.operands.push_back( make_operand( "true" ) );
  completed.op = "equals";
  completed.artificial = true;
  return completed;
}

} // namespace rcm
