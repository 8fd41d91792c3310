fn main() {
    std::process::exit(f5_core::cli::main_with_args());
}
