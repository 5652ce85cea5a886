fn main() {
    std::process::exit(rydberg_cz::cli::main_with_args(std::env::args_os()));
}
