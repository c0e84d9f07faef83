//! `wtype run <config>`: build, verify and export one surface.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use wtype_core::config::RunConfig;
use wtype_core::pipeline::{exit, exit_code, run, RunOptions};

#[derive(Parser)]
#[command(
    name = "wtype",
    version,
    about = "Weierstrass-type surfaces in Minkowski 4-space"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the pipeline described by a TOML config.
    Run {
        config: PathBuf,
        /// Verify only; no mesh or CSV is written.
        #[arg(long)]
        verify_only: bool,
        /// Report path, overriding the config.
        #[arg(long)]
        report: Option<PathBuf>,
        /// Mesh path, overriding the config.
        #[arg(long)]
        mesh: Option<PathBuf>,
        /// Print nothing but errors.
        #[arg(long)]
        quiet: bool,
    },
}

fn main() -> ExitCode {
    let Command::Run {
        config,
        verify_only,
        report,
        mesh,
        quiet,
    } = Cli::parse().command;
    let fail = |e: wtype_core::Error| {
        eprintln!("error: {e}");
        ExitCode::from(exit_code(&e) as u8)
    };
    let cfg = match RunConfig::load(&config) {
        Ok(c) => c,
        Err(e) => return fail(e),
    };
    let opts = RunOptions {
        verify_only,
        report_path: report,
        mesh_path: mesh,
    };
    let out = match run(&cfg, &opts) {
        Ok(o) => o,
        Err(e) => return fail(e),
    };
    if !quiet {
        println!(
            "{} on {}x{} grid, {} valid nodes",
            out.report.kind, out.report.grid.nu, out.report.grid.nv, out.report.grid.valid_nodes
        );
        for c in &out.report.checks {
            let status = if c.pass { "pass" } else { "FAIL" };
            println!(
                "  {status} {:<24} {:>11.3e}  <= {:.3e}  ({} nodes)",
                c.name, c.value, c.tolerance, c.nodes
            );
        }
        for p in &out.written {
            println!("wrote {}", p.display());
        }
    }
    let code = out.exit_code();
    if code != exit::OK && !quiet {
        eprintln!("verification failed");
    }
    ExitCode::from(code as u8)
}
