#include <rcmforge/canonical.hpp>
#include <rcmforge/cli.hpp>
#include <rcmforge/coverage.hpp>
#include <rcmforge/frames.hpp>
#include <rcmforge/parser.hpp>
#include <rcmforge/transform.hpp>
#include <rcmforge/validate.hpp>

#include <CLI11.hpp>

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <future>
#include <optional>
#include <ostream>
#include <sstream>

namespace rcm
{

namespace
{

struct LoadedFile
{
  std::string path;
  std::vector<Requirement> requirements;
  std::string error; // empty when loaded
  int code = kExitOk;
};

std::string error_text( Error const& e )
{
  if ( auto const* unbound = dynamic_cast<UnboundFrameError const*>( &e ) )
    return std::string( e.what() ) + "; register frame " + unbound->signature() + " to bind it";
  return e.what();
}

LoadedFile load_file( std::string const& path, FrameDatabase const& db )
{
  LoadedFile file{ path, {}, {}, kExitOk };
  std::ifstream in( path, std::ios::binary );
  if ( !in )
  {
    file.error = "cannot read file";
    file.code = kExitUsage;
    return file;
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  try
  {
    auto const ext = std::filesystem::path( path ).extension().string();
    file.requirements = ext == ".json" ? load_canonical_document( buffer.str() ) : parse_dsl_document( buffer.str(), db );
  }
  catch ( Error const& e )
  {
    file.error = error_text( e );
    file.code = kExitFailure;
  }
  return file;
}

/// Runs `work` on every path concurrently; results keep input order.
template<typename Result, typename Work>
std::vector<Result> for_each_file( std::vector<std::string> const& paths, Work work )
{
  std::vector<std::future<Result>> futures;
  futures.reserve( paths.size() );
  for ( auto const& path : paths )
    futures.push_back( std::async( std::launch::async, work, path ) );
  std::vector<Result> results;
  results.reserve( paths.size() );
  for ( auto& f : futures )
    results.push_back( f.get() );
  return results;
}

struct FileReport
{
  std::string out;
  std::string err;
  int code = kExitOk;
};

int emit( std::vector<FileReport> const& reports, std::ostream& out, std::ostream& err )
{
  int code = kExitOk;
  for ( auto const& r : reports )
  {
    out << r.out;
    err << r.err;
    code = std::max( code, r.code );
  }
  return code;
}

/// --frames, then RCMFORGE_FRAMES, then the seed.
std::optional<FrameDatabase> resolve_frames( std::string const& option, std::ostream& err, int& code )
{
  std::string path = option;
  if ( path.empty() )
  {
    if ( char const* env = std::getenv( "RCMFORGE_FRAMES" ); env && *env )
      path = env;
  }
  if ( path.empty() )
    return FrameDatabase::seed();
  if ( !std::filesystem::is_regular_file( path ) )
  {
    err << path << ": error: cannot read frame database\n";
    code = kExitUsage;
    return std::nullopt;
  }
  try
  {
    return FrameDatabase::load( path );
  }
  catch ( Error const& e )
  {
    err << "error: " << e.what() << "\n";
    code = kExitFailure;
    return std::nullopt;
  }
}

int cmd_validate( std::vector<std::string> const& paths, FrameDatabase const& db, std::ostream& out, std::ostream& err )
{
  auto const reports = for_each_file<FileReport>( paths, [&db]( std::string const& path ) {
    FileReport report;
    auto const file = load_file( path, db );
    if ( !file.error.empty() )
    {
      report.out = path + ": ERROR\n";
      report.err = path + ": error: " + file.error + "\n";
      report.code = file.code;
      return report;
    }
    std::string body;
    bool passed = true;
    for ( auto const& r : file.requirements )
    {
      for ( std::size_t i = 0; i < r.primitives.size(); ++i )
      {
        auto const result = validate_primitive( r.primitives[i] );
        passed = passed && result.passed();
        body += "  " + r.id + "#" + std::to_string( i + 1 ) + ": " + std::string( to_string( result.status ) ) + "\n";
        for ( auto const& issue : result.issues )
        {
          body += "    " + std::string( to_string( issue.severity ) ) + " " + issue.code + " " + issue.path + ": " +
                  issue.message + "\n";
        }
      }
    }
    report.out = path + ": " + ( passed ? "PASS" : "FAIL" ) + "\n" + body;
    report.code = passed ? kExitOk : kExitFailure;
    return report;
  } );
  return emit( reports, out, err );
}

struct TransformConfig
{
  std::vector<Target> targets;
  TransformOptions options;
  tl::RenderOptions render;
};

int cmd_transform( std::vector<std::string> const& paths, TransformConfig const& config, FrameDatabase const& db,
                   std::ostream& out, std::ostream& err )
{
  auto const reports = for_each_file<FileReport>( paths, [&]( std::string const& path ) {
    FileReport report;
    auto const file = load_file( path, db );
    if ( !file.error.empty() )
    {
      report.err = path + ": error: " + file.error + "\n";
      report.code = file.code;
      return report;
    }
    for ( auto const& r : file.requirements )
    {
      for ( std::size_t i = 0; i < r.primitives.size(); ++i )
      {
        auto const id = r.id + "#" + std::to_string( i + 1 );
        for ( auto target : config.targets )
        {
          try
          {
            report.out += format_result( id, transform( r.primitives[i], target, config.options ), config.render ) + "\n";
          }
          catch ( Error const& e )
          {
            report.err += path + ": " + id + ": error: " + error_text( e ) + "\n";
            report.code = kExitFailure;
          }
        }
      }
    }
    return report;
  } );
  return emit( reports, out, err );
}

int cmd_coverage( std::vector<std::string> const& paths, std::string const& registry, std::string const& format,
                  FrameDatabase const& db, std::ostream& out, std::ostream& err )
{
  std::vector<Approach> approaches;
  if ( registry.empty() )
    approaches = builtin_approaches();
  else
  {
    if ( !std::filesystem::is_regular_file( registry ) )
    {
      err << registry << ": error: cannot read registry\n";
      return kExitUsage;
    }
    try
    {
      approaches = load_registry( registry );
    }
    catch ( Error const& e )
    {
      err << "error: " << e.what() << "\n";
      return kExitUsage;
    }
  }

  int code = kExitOk;
  std::vector<Requirement> corpus;
  auto const files = for_each_file<LoadedFile>( paths, [&db]( std::string const& path ) { return load_file( path, db ); } );
  for ( auto const& file : files )
  {
    if ( !file.error.empty() )
    {
      err << file.path << ": error: " << file.error << "\n";
      code = std::max( code, file.code );
      continue;
    }
    corpus.insert( corpus.end(), file.requirements.begin(), file.requirements.end() );
  }

  try
  {
    auto const stats = coverage_matrix( flatten( corpus ), approaches );
    out << ( format == "csv" ? format_coverage_csv( stats ) : format_coverage_text( stats ) );
    if ( !stats.excluded.empty() )
      code = std::max( code, kExitFailure );
  }
  catch ( Error const& e )
  {
    err << "error: " << e.what() << "\n";
    code = std::max( code, kExitFailure );
  }
  return code;
}

int cmd_frames( std::string const& db_path, std::string const& action, std::ostream& out, std::ostream& err )
{
  int code = kExitOk;
  auto const db = resolve_frames( db_path, err, code );
  if ( !db )
    return code;
  if ( action == "list" )
  {
    out << db->to_table();
    return kExitOk;
  }
  for ( auto const& [key, frame] : *db )
  {
    if ( inflections( key.lemma.substr( 0, key.lemma.find( '-' ) ) ).empty() )
    {
      err << "error: frame " << to_string( key ) << " has no verb head\n";
      code = kExitFailure;
    }
  }
  if ( code == kExitOk )
    out << "ok: " << db->size() << " frames\n";
  return code;
}

} // namespace

int run_cli( std::vector<std::string> const& args, std::ostream& out, std::ostream& err )
{
  CLI::App app{ "Requirement capturing model: validation, MTL/CTL transformation and coverage.", "rcmforge" };
  app.require_subcommand( 1 );
  app.fallthrough();

  std::string frames_path;
  app.add_option( "--frames", frames_path, "Frame database replacing the built-in one (env RCMFORGE_FRAMES)" );

  std::vector<std::string> files;

  auto* validate = app.add_subcommand( "validate", "Parse and validate requirement files" );
  validate->add_option( "files", files, "DSL (.rcm) or canonical (.json) files" )->required();

  auto* transform_cmd = app.add_subcommand( "transform", "Translate requirements into MTL and/or CTL" );
  std::vector<std::string> targets{ "mtl", "ctl" };
  bool ascii = false;
  bool wrap_factual = false;
  transform_cmd->add_option( "--to", targets, "Target logics" )
      ->delimiter( ',' )
      ->check( CLI::IsMember( { "mtl", "ctl", "MTL", "CTL" } ) );
  transform_cmd->add_flag( "--ascii", ascii, "Write 'exists' instead of the quantifier symbol" );
  transform_cmd->add_flag( "--wrap-factual", wrap_factual, "Wrap formulas without preconditions in G/AG" );
  transform_cmd->add_option( "files", files, "DSL (.rcm) or canonical (.json) files" )->required();

  auto* coverage = app.add_subcommand( "coverage", "Check which approaches capture each requirement" );
  std::string registry;
  std::string format = "text";
  coverage->add_option( "--registry", registry, "Approach registry replacing the built-in one" );
  coverage->add_option( "--format", format, "Report format" )->check( CLI::IsMember( { "text", "csv" } ) );
  coverage->add_option( "files", files, "DSL (.rcm) or canonical (.json) files" )->required();

  auto* frames = app.add_subcommand( "frames", "Inspect a frame database" );
  std::string db_path;
  std::string action;
  frames->add_option( "--db", db_path, "Frame database file" );
  frames->add_option( "action", action, "list or check" )->required()->check( CLI::IsMember( { "list", "check" } ) );

  try
  {
    std::vector<std::string> reversed( args.rbegin(), args.rend() );
    app.parse( reversed );
  }
  catch ( CLI::ParseError const& e )
  {
    int const code = app.exit( e, out, err );
    return code == 0 ? kExitOk : kExitUsage;
  }

  if ( frames->parsed() )
    return cmd_frames( db_path.empty() ? frames_path : db_path, action, out, err );

  int code = kExitOk;
  auto const db = resolve_frames( frames_path, err, code );
  if ( !db )
    return code;

  if ( validate->parsed() )
    return cmd_validate( files, *db, out, err );
  if ( coverage->parsed() )
    return cmd_coverage( files, registry, format, *db, out, err );

  TransformConfig config;
  for ( auto const& t : targets )
  {
    auto const target = *target_from_string( t );
    if ( std::find( config.targets.begin(), config.targets.end(), target ) == config.targets.end() )
      config.targets.push_back( target );
  }
  config.options.wrap_factual = wrap_factual;
  config.render.ascii = ascii;
  return cmd_transform( files, config, *db, out, err );
}

} // namespace rcm
