fn main() -> std::process::ExitCode {
    chaoscert::cli::main()
}
