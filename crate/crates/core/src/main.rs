use clap::Parser;

fn main() {
    let cli = qchkit::cli::Cli::parse();
    std::process::exit(qchkit::cli::main_with(cli));
}
