fn main() {
    std::process::exit(subcode::cli::main());
}
