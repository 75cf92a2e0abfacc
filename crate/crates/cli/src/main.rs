fn main() {
    std::process::exit(parhyp_cli::run(std::env::args_os()));
}
