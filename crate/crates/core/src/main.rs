fn main() {
    std::process::exit(cusptower::cli::main_with_args(std::env::args_os()));
}
