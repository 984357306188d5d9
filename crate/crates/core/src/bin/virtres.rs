fn main() {
    std::process::exit(virtres::cli::main_with_args(std::env::args_os()));
}
