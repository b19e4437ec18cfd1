fn main() {
    std::process::exit(gitstrat::cli::main_with_args(std::env::args_os()));
}
