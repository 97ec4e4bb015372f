use clap::Parser;
use geoembed::cli::{Cli, EXIT_MALFORMED, THREADS_ENV};

fn main() {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_MALFORMED } else { 0 };
            let _ = e.print();
            std::process::exit(code);
        }
    };
    let threads = std::env::var(THREADS_ENV).ok();
    std::process::exit(geoembed::execute(&cli, threads.as_deref()));
}
