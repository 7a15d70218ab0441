use std::process::ExitCode;
use std::time::Instant;

use clap::Parser;
use obstruct_cli::commands::{run, Cli};

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let usage = e.use_stderr();
            let _ = e.print();
            return ExitCode::from(if usage { 1 } else { 0 });
        }
    };
    let start = Instant::now();
    let outcome = run(&cli.command).and_then(|o| o.emit(cli.format));
    match outcome {
        Ok(text) => {
            print!("{text}");
            eprintln!("obstruct: done in {:.3} s", start.elapsed().as_secs_f64());
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
