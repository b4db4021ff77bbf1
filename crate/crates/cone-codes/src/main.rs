fn main() -> std::process::ExitCode {
    cone_codes::cli::main()
}
