fn main() {
    std::process::exit(fracplap::cli::main());
}
