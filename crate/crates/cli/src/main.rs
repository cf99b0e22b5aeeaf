use clap::Parser;
use ratlin_cli::{run, write, Cli};
use std::process::ExitCode;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(outcome) => {
            let text = outcome.render(cli.format);
            let written = match &cli.out {
                Some(path) => write(path, &text),
                None => {
                    print!("{text}");
                    Ok(())
                }
            };
            if let Err(e) = written {
                eprintln!("{e}");
                return ExitCode::from(1);
            }
            match outcome.failure {
                Some(condition) => {
                    eprintln!("failed: {condition}");
                    ExitCode::from(2)
                }
                None => ExitCode::SUCCESS,
            }
        }
        Err(e) => {
            eprintln!("{e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
