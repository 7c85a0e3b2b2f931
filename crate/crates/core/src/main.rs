fn main() {
    std::process::exit(sslevel::cli::main());
}
