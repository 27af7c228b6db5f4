mod shadow_price {
    include!("../examples/shadow_price.rs");

    #[test]
    fn runs() {
        main().unwrap();
    }
}

mod two_product_regions {
    include!("../examples/two_product_regions.rs");

    #[test]
    fn runs() {
        main().unwrap();
    }
}

mod verify_oracle {
    include!("../examples/verify_oracle.rs");

    #[test]
    fn runs() {
        main().unwrap();
    }
}
