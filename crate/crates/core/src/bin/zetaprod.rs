fn main() {
    std::process::exit(zetaprod::cli::main());
}
