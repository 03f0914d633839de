fn main() {
    std::process::exit(hybrid_gates::cli::main_with_args(std::env::args_os()));
}
