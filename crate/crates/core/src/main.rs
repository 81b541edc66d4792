fn main() {
    std::process::exit(quantgame::cli::run_cli(std::env::args_os()));
}
