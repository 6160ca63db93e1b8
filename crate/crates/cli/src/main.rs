//! `orthent`: entropy functionals of orthonormal polynomials on [-1, 1].

use clap::{Args, Parser, Subcommand};

use orthent::{
    cmd_asymptotics, cmd_bernstein, cmd_conditions, cmd_entropy, cmd_verify, default_degree_cap,
    default_n_list, max_panels_from_env, parse_n_list, parse_weight_spec, CliError, CliResult,
    Format, RunConfig,
};

#[derive(Parser)]
#[command(
    name = "orthent",
    version,
    about = "Shannon entropy E_n and split functionals F_n, G_n of orthonormal polynomials"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct SweepArgs {
    /// Weight spec: inline JSON like '{"kind":"chebyshev"}' or a file path
    #[arg(long)]
    weight: String,
    /// Degrees: 'a..b' (inclusive) or a comma list; default 1..20
    #[arg(long)]
    n: Option<String>,
    /// Truncation level M > sqrt(2)
    #[arg(long = "M", default_value_t = 1.5)]
    m: f64,
    /// Exponent for the sufficient-condition integrals
    #[arg(long, default_value_t = 0.5)]
    epsilon: f64,
    /// Absolute quadrature tolerance
    #[arg(long = "abs-tol", default_value_t = 1e-10)]
    abs_tol: f64,
    /// Write to this file instead of stdout
    #[arg(long)]
    output: Option<String>,
    /// csv or json
    #[arg(long, default_value = "csv")]
    format: Format,
    /// Degree cap (guards accidental huge sweeps)
    #[arg(long = "max-degree", default_value_t = default_degree_cap())]
    max_degree: usize,
}

#[derive(Subcommand)]
enum Command {
    /// Per-degree entropy report: E, F, G, corrections, energy
    Entropy(SweepArgs),
    /// Per-degree Szego comparison: L2 deviation, leading-coefficient gap
    Asymptotics(SweepArgs),
    /// Fejer-Riesz factorization and exact F/G table for a Bernstein S
    Bernstein {
        /// Coefficients of S as a JSON array in increasing degree
        #[arg(long = "S")]
        s: String,
        /// Degrees for the exact F/G table
        #[arg(long)]
        n: Option<String>,
    },
    /// The four sufficient-condition suprema over a degree list
    Conditions(SweepArgs),
    /// Run the acceptance criteria and print PASS/FAIL per criterion
    Verify,
}

fn config_from(args: &SweepArgs) -> CliResult<RunConfig> {
    let weight_spec = parse_weight_spec(&args.weight)?;
    let n_list = match &args.n {
        Some(text) => parse_n_list(text)?,
        None => default_n_list(),
    };
    let config = RunConfig {
        weight_spec,
        n_list,
        m_level: args.m,
        epsilon: args.epsilon,
        abs_tol: args.abs_tol,
        max_panels: max_panels_from_env(4096)?,
        output: args.output.clone(),
        format: args.format,
    };
    config.validate(args.max_degree)?;
    Ok(config)
}

fn dispatch(cli: Cli) -> CliResult<()> {
    match cli.command {
        Command::Entropy(args) => cmd_entropy(&config_from(&args)?),
        Command::Asymptotics(args) => cmd_asymptotics(&config_from(&args)?),
        Command::Bernstein { s, n } => {
            let list = match &n {
                Some(text) => Some(parse_n_list(text)?),
                None => None,
            };
            let out = cmd_bernstein(&s, list.as_deref())?;
            print!("{out}");
            Ok(())
        }
        Command::Conditions(args) => {
            let config = config_from(&args)?;
            let out = cmd_conditions(&config)?;
            match &config.output {
                Some(path) => std::fs::write(path, out).map_err(Into::into),
                None => {
                    print!("{out}");
                    Ok(())
                }
            }
        }
        Command::Verify => {
            if cmd_verify() {
                Ok(())
            } else {
                Err(CliError::Compute("acceptance criteria failed".into()))
            }
        }
    }
}

fn main() {
    let cli = Cli::parse();
    if let Err(e) = dispatch(cli) {
        eprintln!("{}", e.message());
        std::process::exit(e.exit_code());
    }
}
