fn main() {
    std::process::exit(pade_core::cli::main_with_args(std::env::args_os()));
}
