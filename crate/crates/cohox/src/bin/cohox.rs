use std::process::exit;

fn main() {
    let (out, code) = cohox::cli::run(std::env::args());
    print!("{out}");
    exit(code);
}
