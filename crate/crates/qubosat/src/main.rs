fn main() {
    std::process::exit(qubosat::cli::run());
}
