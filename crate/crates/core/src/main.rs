use clap::Parser;
use restriction_lab::cli::{configure_threads, dispatch, RunConfig, THREADS_ENV};

fn main() {
    let config = RunConfig::parse();
    let threads = std::env::var(THREADS_ENV).ok();
    let outcome = configure_threads(threads.as_deref()).and_then(|_| dispatch(&config));
    match outcome {
        Ok((path, summary)) => println!("{summary} -> {}", path.display()),
        Err(e) => {
            eprintln!("error: {e}");
            std::process::exit(e.exit_code());
        }
    }
}
