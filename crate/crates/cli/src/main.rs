use std::path::PathBuf;

use clap::{Parser, Subcommand};
use graphprod_cli::commands::{self, BallArgs, IsoArgs, Side};

/// Graph products of finite groups: word problem, Cayley balls, Cayley-graph
/// isomorphisms and non-isomorphism certificates.
#[derive(Parser)]
#[command(name = "graphprod", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check groups, generating sets and graphs of a scenario.
    Validate { file: PathBuf },
    /// Print the canonical form of a word such as `u:a;v:b1;u:a2`.
    Reduce {
        file: PathBuf,
        word: String,
        #[arg(long, value_enum, default_value_t)]
        side: Side,
    },
    /// Build a Cayley-graph ball and print its summary.
    Ball {
        file: PathBuf,
        #[arg(long)]
        radius: Option<u32>,
        #[arg(long)]
        dot: Option<PathBuf>,
        #[arg(long)]
        json: Option<PathBuf>,
        #[arg(long)]
        color_by_group: bool,
        #[arg(long)]
        max_ball: Option<usize>,
        #[arg(long, value_enum, default_value_t)]
        side: Side,
    },
    /// Build the product isomorphism and verify it on a ball.
    Iso {
        file: PathBuf,
        #[arg(long)]
        radius: Option<u32>,
        #[arg(long)]
        json: Option<PathBuf>,
        #[arg(long)]
        max_ball: Option<usize>,
    },
    /// Emit a non-isomorphism certificate from maximal-clique subgroups.
    Certificate {
        file: PathBuf,
        #[arg(long)]
        json: Option<PathBuf>,
    },
}

fn main() {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Validate { file } => commands::validate(&file),
        Command::Reduce { file, word, side } => commands::reduce(&file, &word, side),
        Command::Ball {
            file,
            radius,
            dot,
            json,
            color_by_group,
            max_ball,
            side,
        } => commands::ball(
            &file,
            &BallArgs {
                radius,
                dot,
                json,
                color_by_group,
                max_ball,
                side,
            },
        ),
        Command::Iso {
            file,
            radius,
            json,
            max_ball,
        } => commands::iso(
            &file,
            &IsoArgs {
                radius,
                json,
                max_ball,
            },
        ),
        Command::Certificate { file, json } => commands::certificate(&file, json.as_deref()),
    };
    print!("{}", outcome.stdout);
    if outcome.code() != 0 {
        log::info!("exiting with {:?}", outcome.exit);
    }
    std::process::exit(outcome.code());
}
