use clap::Parser;

fn main() {
    let cli = phonfeat::cli::Cli::parse();
    let code = phonfeat::cli::run(cli, &mut std::io::stdout().lock(), &mut std::io::stderr());
    std::process::exit(code);
}
