# Property-based tests