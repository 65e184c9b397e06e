fn main() {
    std::process::exit(kron_cli::run(std::env::args_os()));
}
