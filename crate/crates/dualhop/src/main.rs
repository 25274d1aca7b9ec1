fn main() {
    std::process::exit(dualhop::cli::main_with_args(std::env::args_os()));
}
