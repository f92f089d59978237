from powerdomains.main import main

main()
