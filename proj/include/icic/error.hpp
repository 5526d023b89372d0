#pragma once

#include <stdexcept>
#include <string>

namespace icic {

/// Base class of every error raised by the library.
class error : public std::runtime_error
{
public:
	using std::runtime_error::runtime_error;
};

/// An allocation refers to a (bs, ms, subchannel) triple the scenario does not have.
class malformed_allocation : public error
{
public:
	using error::error;
};

/// A numeric precondition was violated (zero serving gain, K = 1, bad parameter, ...).
class domain_error : public error
{
public:
	using error::error;
};

class instance_too_large : public error
{
public:
	using error::error;
};

class placement_infeasible : public error
{
public:
	using error::error;
};

/// Raised when a derived quantity that must be integral is not (gadget recovery).
class inconsistency_error : public error
{
public:
	using error::error;
};

class io_error : public error
{
public:
	using error::error;
};

class parse_error : public io_error
{
public:
	using io_error::io_error;
};

} // namespace icic
