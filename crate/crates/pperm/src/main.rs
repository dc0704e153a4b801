use clap::Parser;

fn main() {
    let cli = pperm::cli::Cli::parse();
    match pperm::cli::run(cli) {
        Ok((output, code)) => {
            print!("{}", output);
            std::process::exit(code);
        }
        Err(e) => {
            eprintln!("error: {}", e);
            std::process::exit(2);
        }
    }
}
