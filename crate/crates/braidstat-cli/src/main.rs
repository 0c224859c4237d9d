//! `braidstat`: command-line frontend for the braidstat library.
//!
//! Exit codes: 0 success, 1 acceptance failure, 2 validation error,
//! 3 size or work cap exceeded. Errors go to stderr as one JSON object.

mod commands;
mod config;
mod inputs;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, CommandFactory, FromArgMatches, Parser, Subcommand, ValueEnum};
use serde_json::json;

const CAPS_HELP: &str = "\
Caps (defaults; BRAIDSTAT_CAP=N replaces all but the strand limit):
  linear engine basis   dim(V)^n            <= 200000
  orbit engine tuples   |R|^n               <= 20000000
  homology chain rank   2^(n-1) dim(V)^n    <= 200000
  homology strands      n                   <= 6 (fixed)
  Nielsen tuples        |R|^n               <= 10000000
  statistics work       q^n                 <= 100000000
A cap violation exits with code 3.";

const ABOUT: &str = "Exact computations with racks, braided vector spaces, braid groups and function-field statistics";

const LONG_ABOUT: &str = "\
Exact computations with racks, braided vector spaces, braid-group homology,
Hurwitz orbits and statistics over squarefree polynomials. Every number is
an exact integer or rational; identical invocations give byte-identical
output whatever the thread count.

Exit codes: 0 ok; 1 an acceptance criterion failed; 2 validation error;
3 size or work cap exceeded. Errors are printed to stderr as
{\"error\": CODE, \"message\": TEXT, \"exit_code\": N}.

Configuration: --config FILE reads TOML. Top-level keys set global flags
(threads, format, output); a table named after a subcommand sets its flags,
e.g. [coinv] n = 4. Flags given on the command line take precedence.";

#[derive(Parser, Debug)]
#[command(name = "braidstat", version, about = ABOUT, long_about = LONG_ABOUT, after_help = CAPS_HELP, args_override_self = true)]
struct Cli {
    /// TOML configuration file; explicit flags override its values
    #[arg(long, global = true, value_name = "FILE")]
    config: Option<PathBuf>,
    /// Worker threads (default: all cores); results do not depend on it
    #[arg(long, global = true, value_name = "K")]
    threads: Option<usize>,
    /// Output format; each subcommand documents the formats it supports
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Write results to this file instead of stdout
    #[arg(long, global = true, value_name = "PATH")]
    output: Option<PathBuf>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

/// Rack, cocycle, field and space selectors shared by several subcommands.
#[derive(Args, Debug, Clone, Default)]
pub struct ObjectArgs {
    /// Rack: built-in name or JSON file {"table": [[x^y ...] ...], "labels"?}
    #[arg(long, value_name = "RACK")]
    pub rack: Option<String>,
    /// Cocycle on the rack: const:X, wedge, pm, or JSON file {"values": [[...]]}
    #[arg(long, value_name = "COCYCLE")]
    pub cocycle: Option<String>,
    /// Coefficient field: Q, Q(zeta_K), cyclotomic:K, F_q [default: Q]
    #[arg(long, value_name = "FIELD")]
    pub field: Option<String>,
    /// Braided space: built-in name or JSON file {"field", "dim", "braiding": [[row, col, x] ...]}
    #[arg(long, value_name = "SPACE")]
    pub space: Option<String>,
}

const OBJECT_HELP: &str = "\
Built-in racks: joyce, s_wedge, t2, sN_transpositions (N = 2..5), trivial:N,
cyclic:N, and products A*B (e.g. s3_transpositions*t2).
Built-in spaces: kappa, kappa_zeta:K, kappa_wedge, kappa_pm, rack_wedge:RACK,
rack_pm:RACK, rack:RACK, rack:RACK:const:X. kappa_zeta:K lives over Q(zeta_K)
unless --field is given.
Scalars: integers, fractions a/b, zeta^k, -zeta, or [a0,a1,...] coefficients.";

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Structural report for a rack
    #[command(after_help = format!("{RACK_HELP}\n\n{OBJECT_HELP}\n\n{CAPS_HELP}"))]
    Rack(RackArgs),
    /// Validate a 2-cocycle and report its cyclotomic data
    #[command(after_help = format!("{COCYCLE_HELP}\n\n{OBJECT_HELP}\n\n{CAPS_HELP}"))]
    Cocycle(CocycleArgs),
    /// Braided vector space summary and braid action on basis tuples
    #[command(after_help = format!("{BVS_HELP}\n\n{OBJECT_HELP}\n\n{CAPS_HELP}"))]
    Bvs(BvsArgs),
    /// Braid-group coinvariants H0(B_n, V^n) and the algebra C(V)
    #[command(after_help = format!("{COINV_HELP}\n\n{OBJECT_HELP}\n\n{CAPS_HELP}"))]
    Coinv(CoinvArgs),
    /// Braid-group homology H_i(B_n, V^n) with vanishing predictions
    #[command(after_help = format!("{HOMOLOGY_HELP}\n\n{OBJECT_HELP}\n\n{CAPS_HELP}"))]
    Homology(HomologyArgs),
    /// Symmetric-group characters, hook decompositions and trace identities
    #[command(after_help = format!("{SYMSTATS_HELP}\n\n{OBJECT_HELP}\n\n{CAPS_HELP}"))]
    Symstats(SymstatsArgs),
    /// Nielsen tuples, braid orbits and q-power data
    #[command(after_help = format!("{HURWITZ_HELP}\n\n{CAPS_HELP}"))]
    Hurwitz(HurwitzArgs),
    /// Exact statistics over monic squarefree polynomials over F_q
    #[command(after_help = format!("{FFSTATS_HELP}\n\n{CAPS_HELP}"))]
    Ffstats(FfstatsArgs),
    /// Run the acceptance suite
    #[command(after_help = format!("{ACCEPT_HELP}\n\n{CAPS_HELP}"))]
    Accept(AcceptArgs),
}

impl Cmd {
    fn name(&self) -> &'static str {
        match self {
            Cmd::Rack(_) => "rack",
            Cmd::Cocycle(_) => "cocycle",
            Cmd::Bvs(_) => "bvs",
            Cmd::Coinv(_) => "coinv",
            Cmd::Homology(_) => "homology",
            Cmd::Symstats(_) => "symstats",
            Cmd::Hurwitz(_) => "hurwitz",
            Cmd::Ffstats(_) => "ffstats",
            Cmd::Accept(_) => "accept",
        }
    }
}

const RACK_HELP: &str = "\
Output: JSON with size, operation table (row x lists x^y), quandle,
connected, components, Inn(R) order, hereditary connectivity (|R| <= 12),
ideals and, with --generators, whether the set generates (by closure and
by the component criterion, which must agree). Elements are 0-based.
Formats: json.
Example: braidstat rack --rack s3_transpositions --generators 0,1";

#[derive(Args, Debug, Clone)]
pub struct RackArgs {
    #[command(flatten)]
    pub obj: ObjectArgs,
    /// Comma-separated 0-based elements to test for generation
    #[arg(long, value_name = "LIST")]
    pub generators: Option<String>,
}

const COCYCLE_HELP: &str = "\
Output: JSON with the value table c(x, y), the cyclotomic order, P_y for
each y (when cyclotomic), the pigeonhole degree bound, and with --rackify D
the size of the rackified rack and whether the embedding check holds.
Formats: json.
Example: braidstat cocycle --rack s3_transpositions*t2 --cocycle pm";

#[derive(Args, Debug, Clone)]
pub struct CocycleArgs {
    #[command(flatten)]
    pub obj: ObjectArgs,
    /// Order of the root-of-unity group used for rackification
    #[arg(long, value_name = "D")]
    pub rackify: Option<u64>,
}

const BVS_HELP: &str = "\
Output: JSON with field, dimension, permutational/monomial flags, the
Yang-Baxter check and the braiding as [row, col, scalar] triplets. With
--word and --tuple, the image of the basis tensor e_tuple under the braid
(words act on the right; letters s1, s2^-1, ...; index = tuple read in base
dim V, first factor most significant).
Formats: json.
Example: braidstat bvs --space kappa_pm --word 's1 s2^-1' --tuple 0,1,1";

#[derive(Args, Debug, Clone)]
pub struct BvsArgs {
    #[command(flatten)]
    pub obj: ObjectArgs,
    /// Braid word such as 's1 s2^-1 s1'
    #[arg(long, value_name = "WORD")]
    pub word: Option<String>,
    /// Comma-separated basis tuple; its length is the strand count
    #[arg(long, value_name = "LIST")]
    pub tuple: Option<String>,
}

const COINV_HELP: &str = "\
Modes (at most one of --deg-bound, --one-controlled, --split; default is
degree n):
  degree n       CSV n,engine,rep,orbit_size,alive: one row per orbit (orbit
                 engine) or per basis tuple of the quotient (linear engine).
                 JSON adds kill witnesses.
  --deg-bound B  deg C(V): largest n <= B with nonzero coinvariants.
                 CSV n,dim.
  --one-controlled M --window N
                 kernel/cokernel of multiplication by sum_s s^M on C(V) in
                 degrees 0..N. CSV n,dim_source,dim_target,rank,ker,coker.
  --split N      rack must be BASE*t2: pure-color splitting up to degree N.
                 CSV n,total,phi_only,psi_only,mixed.
The orbit engine needs --rack (with optional --cocycle, default const:1);
--space uses the linear engine. Tuples are space-separated 0-based elements.
Formats: csv (default), json.
Example: braidstat coinv --rack joyce --cocycle const:-1 --n 4";

#[derive(Args, Debug, Clone)]
pub struct CoinvArgs {
    #[command(flatten)]
    pub obj: ObjectArgs,
    /// Tensor degree n
    #[arg(long, value_name = "N")]
    pub n: Option<usize>,
    /// auto (orbit for racks), linear or orbit
    #[arg(long, value_name = "ENGINE")]
    pub engine: Option<String>,
    /// Restrict to one grade of a graded space (linear engine)
    #[arg(long, value_name = "G", allow_hyphen_values = true)]
    pub grade: Option<i64>,
    /// Entries per connected component, comma-separated (orbit engine)
    #[arg(long, value_name = "LIST")]
    pub multidegree: Option<String>,
    /// Compute deg C(V), searching up to B
    #[arg(long, value_name = "B")]
    pub deg_bound: Option<usize>,
    /// Check 1-controlledness with h = sum_s s^M
    #[arg(long, value_name = "M")]
    pub one_controlled: Option<usize>,
    /// Top degree N for --one-controlled
    #[arg(long, value_name = "N")]
    pub window: Option<usize>,
    /// Check splitting for a cocycle on BASE*t2 up to degree N
    #[arg(long, value_name = "N")]
    pub split: Option<usize>,
}

const HOMOLOGY_HELP: &str = "\
Output: JSON {n, coefficients, field, engine, grade, dims, chain_ranks,
euler_ok, coinvariant_degree, predicted_vanishing_below, conforms,
violations}. dims[i] = dim H_i(B_n, V^n) for i <= imax. The resolution
engine uses the Salvetti complex (any imax <= n-1); the fox engine gives
H0 and H1 only. predicted_vanishing_below is (m - d)/(d + 2 deg V), with
m = n (or the grade) and d = deg C(V) (searched up to --deg-bound, default 8);
conforms is null when d is not found.
--predict prints the closed-form bounds from --d, --deg-v, --n, --m, --q,
--r-size, --g, --f, --j, --dim-m instead.
Strands are capped at 6. Formats: json.
Example: braidstat homology --space kappa_zeta:3 --n 3 --imax 2";

#[derive(Args, Debug, Clone)]
pub struct HomologyArgs {
    #[command(flatten)]
    pub obj: ObjectArgs,
    /// Strand count n
    #[arg(long, value_name = "N")]
    pub n: Option<u64>,
    /// Highest homological degree [default: n-1]
    #[arg(long, value_name = "I")]
    pub imax: Option<usize>,
    /// Restrict to one grade of a graded space
    #[arg(long, value_name = "G", allow_hyphen_values = true)]
    pub grade: Option<i64>,
    /// resolution (default) or fox
    #[arg(long, value_name = "ENGINE")]
    pub engine: Option<String>,
    /// Search bound for deg C(V)
    #[arg(long, value_name = "B")]
    pub deg_bound: Option<usize>,
    /// Print predicted bounds instead of computing homology
    #[arg(long, num_args = 0..=1, default_missing_value = "true", require_equals = true, value_name = "BOOL")]
    pub predict: Option<bool>,
    /// deg C(V) for --predict
    #[arg(long, value_name = "D")]
    pub d: Option<u64>,
    /// Degree of V in the grading for --predict [default: 1]
    #[arg(long, value_name = "K")]
    pub deg_v: Option<u64>,
    /// Grade m for --predict
    #[arg(long, value_name = "M")]
    pub m: Option<u64>,
    /// Field size q for --predict
    #[arg(long, value_name = "Q")]
    pub q: Option<u64>,
    /// |R| for --predict
    #[arg(long, value_name = "R")]
    pub r_size: Option<u64>,
    /// Genus g for the surface bound
    #[arg(long, value_name = "G")]
    pub g: Option<u64>,
    /// Boundary count f for the surface bound
    #[arg(long, value_name = "F")]
    pub f: Option<u64>,
    /// Homological degree j for the Betti bounds
    #[arg(long, value_name = "J")]
    pub j: Option<u64>,
    /// dim M for the Betti bounds [default: 1]
    #[arg(long, value_name = "D")]
    pub dim_m: Option<u64>,
}

const SYMSTATS_HELP: &str = "\
Modes:
  decompose  character of V^n on S_n (V permutational, characteristic 0,
             n <= 8) by cycle type, hook multiplicities, non-hook remainder.
  irr        rows cycle_type,n_times_value,expected of the identity
             1_irr = (1/n) sum_k (-1)^k tr(wedge^k std), n <= 12.
  wedge      tr(wedge^k std) for every cycle type of S_n, k = 0..n-1.
  trace      pointwise trace and convolution identities over Conf^n(F_q),
             1 <= n <= 8, q odd; work q^n.
Cycle types are written 3.1.1 (parts, descending).
Formats: json (default); csv for irr and wedge.
Example: braidstat symstats --mode decompose --space kappa_wedge --n 5";

#[derive(Args, Debug, Clone)]
pub struct SymstatsArgs {
    #[command(flatten)]
    pub obj: ObjectArgs,
    /// decompose, irr, wedge or trace
    #[arg(long, value_name = "MODE")]
    pub mode: Option<String>,
    /// Degree n
    #[arg(long, value_name = "N")]
    pub n: Option<usize>,
    /// Field size for --mode trace
    #[arg(long, value_name = "Q")]
    pub q: Option<u32>,
}

const HURWITZ_HELP: &str = "\
Groups: sN (N <= 6), aN (3..6), dN (order 2N, N = 3..24), zN (N <= 64).
Classes: transpositions, involutions, order:K, nonidentity.
Default output: JSON with the tuple count, braid orbits (size, lex-minimal
representative, product, generated subgroup, class counts) and, with --q,
the entrywise q-power action on orbits (status exact for |G| = 2, model
otherwise) and with --estimate the point estimate
fixed * (q^n - q^(n-1)) * convention factor.
--table A..B prints orbit counts of product-one generating tuples for
n = A..B with the eventual period (CSV n,tuples,orbits,fixed_orbits,descends).
Group elements are indices into the group's element list (0 = identity).
Formats: json (default); csv for --table.
Example: braidstat hurwitz --group s3 --class transpositions --n 4 --generating --q 5";

#[derive(Args, Debug, Clone)]
pub struct HurwitzArgs {
    /// Group name
    #[arg(long, value_name = "GROUP")]
    pub group: Option<String>,
    /// Conjugacy-closed set R
    #[arg(long, value_name = "CLASS")]
    pub class: Option<String>,
    /// Tuple length n
    #[arg(long, value_name = "N")]
    pub n: Option<usize>,
    /// Require product one [default: true]
    #[arg(long, num_args = 0..=1, default_missing_value = "true", require_equals = true, value_name = "BOOL")]
    pub product_one: Option<bool>,
    /// Require the entries to generate G [default: false]
    #[arg(long, num_args = 0..=1, default_missing_value = "true", require_equals = true, value_name = "BOOL")]
    pub generating: Option<bool>,
    /// Entries per G-class inside R, comma-separated
    #[arg(long, value_name = "LIST")]
    pub multidegree: Option<String>,
    /// Field size q for the q-power action
    #[arg(long, value_name = "Q")]
    pub q: Option<u64>,
    /// Range A..B of n for the component table
    #[arg(long, value_name = "A..B")]
    pub table: Option<String>,
    /// Add the point estimate (needs --q)
    #[arg(long, num_args = 0..=1, default_missing_value = "true", require_equals = true, value_name = "BOOL")]
    pub estimate: Option<bool>,
    /// Counting convention factor for the estimate [default: 1]
    #[arg(long, value_name = "K")]
    pub convention_factor: Option<u64>,
}

const FFSTATS_HELP: &str = "\
Statistics over Conf^n(F_q), the monic squarefree polynomials of degree n:
  mobius_sum    sum mu(f); main term from prod_P (1 - t^deg P) = 1 - qt
  chi_disc_sum  sum chi_quad(disc f), q odd; same main term up to sign
  irr_ratio     #irreducible/#Conf^n vs q/((q-1)n), tolerance 2 q^(-n/2)
  legendre      T(n) = sum_f sum_{gh=f} (g/h) vs 2 #Conf^n, q odd; the
                Conf-level analog (trivial R), checked against frozen values
Output CSV: q,n,statistic,value,main_term,residual,verdict (exact integers
and rationals). JSON adds the criterion text and, for legendre, the
relative residuals |T - 2#Conf|/#Conf with a trend flag.
--experiment FILE reads {q, n_min, n_max, statistic} from TOML or JSON.
Work per n is q^n units. Formats: csv (default), json.
Example: braidstat ffstats --q 3 --n-min 2 --n-max 10 --statistic mobius_sum";

#[derive(Args, Debug, Clone)]
pub struct FfstatsArgs {
    /// Field size q (prime or prime power)
    #[arg(long, value_name = "Q")]
    pub q: Option<u32>,
    /// Smallest degree
    #[arg(long, value_name = "N")]
    pub n_min: Option<usize>,
    /// Largest degree
    #[arg(long, value_name = "N")]
    pub n_max: Option<usize>,
    /// mobius_sum, chi_disc_sum, irr_ratio or legendre
    #[arg(long, value_name = "NAME")]
    pub statistic: Option<String>,
    /// Experiment file (.toml or .json)
    #[arg(long, value_name = "FILE")]
    pub experiment: Option<PathBuf>,
}

const ACCEPT_HELP: &str = "\
Runs acceptance criteria 1..10 (all exact; each has a wall-clock budget in
seconds: 10, 60, 600, 30, 300, 600, 300, 600, 300, 60). Prints one line per
criterion: 'criterion N: PASS|FAIL title: detail'. Timings go to stderr so
stdout stays deterministic. Exit code 1 when any criterion fails.
Formats: text (default), json.
Example: braidstat accept --suite all";

#[derive(Args, Debug, Clone)]
pub struct AcceptArgs {
    /// all, or a comma-separated list of criterion numbers
    #[arg(long, value_name = "SUITE")]
    pub suite: Option<String>,
}

/// Errors with their exit code.
pub enum Failure {
    Lib(braidstat::Error),
    Usage(String),
}

impl From<braidstat::Error> for Failure {
    fn from(e: braidstat::Error) -> Failure {
        Failure::Lib(e)
    }
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Lib(e) if e.is_cap() => 3,
            _ => 2,
        }
    }

    fn report(&self) -> serde_json::Value {
        let (error, message) = match self {
            Failure::Lib(e) => (e.code().to_string(), e.to_string()),
            Failure::Usage(m) => ("InvalidArguments".to_string(), m.clone()),
        };
        json!({"error": error, "message": message, "exit_code": self.code()})
    }
}

/// Rendered result of a subcommand.
pub struct Output {
    pub body: String,
    /// exit code when the command ran but reports failure (accept)
    pub status: u8,
}

fn fail(f: Failure) -> ExitCode {
    eprintln!("{}", f.report());
    ExitCode::from(f.code())
}

fn parse(argv: &[String]) -> Result<Cli, clap::Error> {
    let m = Cli::command().try_get_matches_from(argv)?;
    let cli = Cli::from_arg_matches(&m)?;
    let Some(path) = cli.config.clone() else {
        return Ok(cli);
    };
    let tokens = config::config_tokens(&path, cli.cmd.name())
        .map_err(|e| Cli::command().error(clap::error::ErrorKind::InvalidValue, e))?;
    let cm = Cli::command().try_get_matches_from(&tokens).map_err(|e| {
        let msg = e.to_string();
        Cli::command().error(e.kind(), format!("in config {}: {}", path.display(), msg.trim()))
    })?;
    let mut merged = Cli::from_arg_matches(&cm)?;
    merged.update_from_arg_matches(&m)?;
    Ok(merged)
}

fn main() -> ExitCode {
    let argv: Vec<String> = std::env::args().collect();
    let cli = match parse(&argv) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion | ErrorKind::DisplayHelpOnMissingArgumentOrSubcommand) {
                let _ = e.print();
                return if e.kind() == ErrorKind::DisplayHelpOnMissingArgumentOrSubcommand { ExitCode::from(2) } else { ExitCode::SUCCESS };
            }
            let msg = e.to_string();
            let first = msg.lines().next().unwrap_or("").trim_start_matches("error: ").to_string();
            return fail(Failure::Usage(first));
        }
    };
    let caps = match braidstat::Caps::from_env() {
        Ok(c) => c,
        Err(e) => return fail(e.into()),
    };
    if let Some(k) = cli.threads {
        if k == 0 {
            return fail(Failure::Usage("--threads must be at least 1".into()));
        }
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(k).build_global() {
            return fail(Failure::Usage(format!("cannot start thread pool: {e}")));
        }
    }
    let ctx = commands::Ctx { caps, format: cli.format };
    let result = match &cli.cmd {
        Cmd::Rack(a) => commands::rack(&ctx, a),
        Cmd::Cocycle(a) => commands::cocycle(&ctx, a),
        Cmd::Bvs(a) => commands::bvs(&ctx, a),
        Cmd::Coinv(a) => commands::coinv(&ctx, a),
        Cmd::Homology(a) => commands::homology(&ctx, a),
        Cmd::Symstats(a) => commands::symstats(&ctx, a),
        Cmd::Hurwitz(a) => commands::hurwitz(&ctx, a),
        Cmd::Ffstats(a) => commands::ffstats(&ctx, a),
        Cmd::Accept(a) => commands::accept(&ctx, a),
    };
    let out = match result {
        Ok(o) => o,
        Err(f) => return fail(f),
    };
    let written = match &cli.output {
        Some(p) => std::fs::write(p, &out.body).map_err(|e| format!("cannot write {}: {e}", p.display())),
        None => {
            let mut s = std::io::stdout().lock();
            s.write_all(out.body.as_bytes()).and_then(|_| s.flush()).map_err(|e| e.to_string())
        }
    };
    if let Err(e) = written {
        return fail(Failure::Usage(e));
    }
    ExitCode::from(out.status)
}
