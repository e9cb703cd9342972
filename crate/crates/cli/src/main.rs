fn main() {
    std::process::exit(quasiprob_cli::main_with_args(std::env::args_os()));
}
